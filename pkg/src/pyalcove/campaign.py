import importlib
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
import sympy
import yaml

from .ajs import ajs_track, objects_equal, p0, t_on_twisted, t_out_twisted, track_matches
from .bm import BMResult, check_mone, verify_conjecture
from .exceptions import PyAlcoveException
from .frame_filter import VerifyFrame
from .hecke import bound_U_min
from .rootsys import build_root_datum, parse_type_label
from .scalars import ScalarField
from .structure import build_graph, gkm_check, gkm_prime_set
from .utils import listMe, readableList, simpleListed
from .weyl import W_circ, bruhat_ideal, element, elements_upto, generic_leq, generic_oracle_leq, parse_word

class CampaignLoader(yaml.SafeLoader):
    '''safe loader that renames a repeated campaign name to name#1, name#2 with a FutureWarning'''

    def construct_renamed_map(self, node):
        data = {}
        yield data
        for key_node, value_node in node.value:
            key = self.construct_object(key_node, deep=True)
            if key in data:
                suffix = 1
                while f"{key}#{suffix}" in data:
                    suffix += 1
                warnings.warn(f'duplicate key "{key}" in yaml input, new key value {key}#{suffix} substituted', FutureWarning)
                key = f"{key}#{suffix}"
            data[key] = self.construct_object(value_node, deep=True)

CampaignLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, CampaignLoader.construct_renamed_map)


def load_yaml(text):
    return yaml.load(text, Loader=CampaignLoader)


class CampaignVerifier:
    ''' run verification campaigns over selected elements and fields, results are returned in a VerifyFrame.

    campaigns can be passed as a dict, or a yaml str, via parameter, or as function result from an external module.
    created from the AffineSystem object with the .campaigns property.
    '''

    _directives = ['types','lmax','words','select','sample','fields','checks','note']
    _checks = ['conjecture','mone','gkm','bound','track','twisted','oracle']
    _selections = ['lmax','words','select']
    _defaults = {'cutoff_slack': 4, 'membership_cap': 3, 'oracle_multiplier': 8, 'seed': 20240517, 'workers': 2}

    def __init__(self, system=None):
        self._system = system
        self._campaigns = None
        self._settings = {}
        self._module = None

    def load(self, campaigns=None, settings=None, module=None, reset=False, defaultmodule=".campaign_rules"):
        '''load campaigns + settings from yaml str, structure or from packaged module

        Args:
            campaigns (dict, str): dict of campaign specifications, or yaml str that expands into one
            settings (dict, str): numeric defaults in a dict, or in a yaml string
            module (str): name of module that contains functions campaigns() and settings()
            defaultmodule (str): module name to be used if all parameters are omitted
            reset (bool): clear campaigns, settings and module in CampaignVerifier object, before loading new values

        Returns:
            CampaignVerifier: the updated object

        Example::

            s.campaigns.load(campaigns = {'short words':
                {'types': 'A1~',
                 'words': ['0', '01', '010'],
                 'fields': ['Q', 'F3'],
                 'checks': ['conjecture', 'mone']}
                                          }
                             ).verify()

        '''

        if reset:  # clear prior load
            self._campaigns = None
            self._settings = {}
            self._module = None

        if campaigns and settings: pass
        elif module: pass
        elif self._campaigns and self._settings: pass
        elif self._module:
            module = self._module
        else:
            module = defaultmodule  # backstop

        if campaigns and settings: pass
        elif (self._campaigns and self._settings) and not module:
            if not campaigns:
                campaigns = self._campaigns
            if not settings:
                settings = self._settings
        else:  # get the missing component(s) from module
            ruleset = importlib.import_module(module, package="pyalcove")
            ruleset = importlib.reload(ruleset)  # reload module for easier test of modifications
            self._module = module
            if not campaigns:
                campaigns = ruleset.campaigns(self)
            if not settings:
                settings = ruleset.settings(self)

        if campaigns and type(campaigns)==str:
            campaigns = load_yaml(campaigns)
        if settings and type(settings)==str:
            settings = load_yaml(settings)

        self._campaigns = campaigns
        self._settings = {**self._defaults, **(settings or {})}

        return self

    def add_settings(self, settings=None):
        ''' Add or replace settings, from a dict or a yaml string value.

        Example::

          v = s.campaigns.load()

          v.add_settings({'workers': 4, 'cutoff_slack': 6})

        '''
        if settings and type(settings)==dict:
            pass
        elif settings and type(settings)==str:
            settings = load_yaml(settings)
        else:
            raise TypeError('settings parameter must be a dict or a yaml string')
        if type(settings)!=dict:
            raise TypeError('settings parameter must expand into a dict')

        for (name,value) in settings.items():
            if name not in self._defaults:
                raise TypeError(f'unknown setting {name}, try {readableList(self._defaults.keys())}')
            if type(value)!=int or value<0:
                raise TypeError(f'setting {name} needs a non-negative integer, not {value!r}')

        self._settings.update(settings)

        return self

    def get_settings(self, name=None):
        ''' Get settings as a dict, or one value

        Example::

          v.get_settings()  # all settings as a dict

          v.get_settings('workers')

        '''
        if not name:
            return {**self._defaults, **self._settings}
        elif type(name)==str:
            if name not in self._defaults:
                raise TypeError(f'unknown setting {name}, try {readableList(self._defaults.keys())}')
            return self._settings.get(name, self._defaults[name])
        else:
            raise TypeError('name parameter must be the name of a setting, or missing')

    def syntax_check(self, confirm=True) -> VerifyFrame:
        ''' check campaigns for unknown directives, type labels, checks, fields and words

        specify confirm=False to suppress the message when all is OK

        Args:
            confirm (bool): False if the success message should be suppressed, so in automated testing the result frame has .empty

        Returns:
            syntax messages (VerifyFrame)

        Example::

          s.campaigns.load().syntax_check()

          if s.campaigns.load().syntax_check(confirm=False).empty:
              print('No syntax errors in default campaigns')

        '''

        if not self._campaigns:
            raise TypeError('campaigns must be loaded before running syntax check')

        brokenList = []
        def broken(campaign, label, comment, w=''):
            brokenList.append(dict(TYPE=label, W=w, MATCH=False, CAMPAIGN=campaign, NOTE=comment))

        if type(self._campaigns)!=dict:
            broken('', '', 'campaigns must be a dict of campaign entries')
            return VerifyFrame(pd.DataFrame.from_records(brokenList, columns=VerifyFrame._columns))

        for (name,spec) in self._campaigns.items():
            if type(spec)!=dict:
                broken(name, '', 'campaign entry must be a dict of directives')
                continue
            for directive in spec:
                if directive not in self._directives:
                    broken(name, '', f'unsupported directive {directive}, try {readableList(self._directives)}')

            labels = []
            for label in listMe(spec.get('types', [])):
                try:
                    parse_type_label(label)
                    labels.append(label)
                except ValueError as e:
                    broken(name, str(label), str(e))
            if 'types' not in spec:
                broken(name, '', 'campaign needs a types directive')

            selected = [s for s in self._selections if s in spec]
            if len(selected)!=1:
                broken(name, '', f'campaign needs exactly one of {readableList(self._selections)}')
            if 'lmax' in spec and (type(spec['lmax'])!=int or spec['lmax']<0):
                broken(name, '', f"lmax must be a non-negative integer, not {spec['lmax']!r}")
            if 'select' in spec and spec['select']!='W_circ':
                broken(name, '', f"unknown selection {spec['select']!r}, try W_circ")
            if 'sample' in spec and (type(spec['sample'])!=int or spec['sample']<1):
                broken(name, '', f"sample must be a positive integer, not {spec['sample']!r}")
            for label in labels:
                for word in listMe(spec.get('words', [])):
                    try:
                        parse_word(build_root_datum(label), str(word))
                    except ValueError as e:
                        broken(name, label, str(e), w=str(word))

            for tag in listMe(spec.get('fields', ['Q'])):
                try:
                    ScalarField.parse(tag)
                except ValueError as e:
                    broken(name, '', str(e))
            if not spec.get('checks'):
                broken(name, '', 'campaign needs at least one check')
            for check in listMe(spec.get('checks', [])):
                if check not in self._checks:
                    broken(name, '', f'unknown check {check}, try {readableList(self._checks)}')

        if confirm and not brokenList:
            brokenList.append(dict(MATCH=True, NOTE='No problems found'))
        return VerifyFrame(pd.DataFrame.from_records(brokenList, columns=VerifyFrame._columns))

    def elements(self, spec, rd):
        ''' the elements one campaign runs on, for one root datum '''
        if 'lmax' in spec:
            found = elements_upto(rd, spec['lmax'])
        elif 'words' in spec:
            found = [element(rd, str(word)) for word in listMe(spec['words'])]
        else:
            found = sorted(W_circ(rd), key=lambda x: (x.length, x.word()))
        found = list(dict.fromkeys(found))
        if 'sample' in spec and spec['sample'] < len(found):
            rng = np.random.default_rng(self.get_settings('seed'))
            picked = sorted(rng.choice(len(found), size=spec['sample'], replace=False))
            found = [found[i] for i in picked]
        return found

    def verify(self, campaigns=None, settings=None, module=None, reset=False, verbose=False, workers=None) -> VerifyFrame:
        ''' run every campaign, one row per vertex for conjecture checks and one row per element for the other checks

        failures of a single run (GKM gate, cutoff) are recorded as rows with MATCH False and the reason in NOTE.

        Args:
            verbose (bool): True: print progress messages
            workers (int): threads per campaign, the workers setting when omitted

        Returns:
            Result object (VerifyFrame)

        Example::

          s.campaigns.load().verify().failures()

        '''

        if campaigns or settings or module or reset:
            self.load(campaigns, settings, module, reset)

        if not self._campaigns:
            raise TypeError('campaigns must be loaded before running verify')

        syntax = self.syntax_check(confirm=False)
        if not syntax.empty:
            warnings.warn('verify() cannot process campaigns with syntax failures', SyntaxWarning)
            return syntax

        workers = workers or self.get_settings('workers')
        slack = self.get_settings('cutoff_slack')
        cap = self.get_settings('membership_cap')
        multiplier = self.get_settings('oracle_multiplier')

        v_m_campaign = None
        def v_m(*parms):
            '''print verbose progress message'''
            if verbose:
                nonlocal v_m_campaign
                if v_m_campaign != name:
                    v_m_campaign = name
                    print("Processing starts:", v_m_campaign)
                print(*parms)

        def row(w, field, check, match, note='', x='', rank=None, kl=None):
            return {'TYPE': w.rd.label, 'W': str(w), 'X': x, 'FIELD': field.name if field else '',
                    'RANK': rank, 'KL': kl, 'KL_POLY': '', 'GRADED': None, 'MATCH': match,
                    'CAMPAIGN': name, 'NOTE': f'{check}: {note}' if note else check}

        results = {}
        def sheaf(w, field):
            key = (w, field)
            if key not in results:
                try:
                    results[key] = verify_conjecture(w, field, slack=slack)
                except PyAlcoveException as e:
                    results[key] = e
            return results[key]

        def run(job):
            (w, field, check) = job
            if check == 'conjecture':
                result = sheaf(w, field)
                if isinstance(result, BMResult):
                    frame = result.frame(campaign=name)
                    frame['NOTE'] = check
                    return frame.to_dict('records')
                return [row(w, field, check, False, result.message)]
            if check == 'mone':
                result = sheaf(w, field)
                if isinstance(result, BMResult):
                    return [row(w, field, check, check_mone(w, field, result=result))]
                return [row(w, field, check, False, result.message)]
            if check == 'gkm':
                g = build_graph(w.rd, w)
                triples = gkm_check(g, field)
                return [row(w, field, check, not triples, f'bad primes {simpleListed(gkm_prime_set(g)) or "none"}')]
            if check == 'bound':
                U = bound_U_min(w)
                p = sympy.nextprime(U)
                result = sheaf(w, ScalarField(p))
                if isinstance(result, BMResult):
                    return [row(w, result.field, check, result.match, f'U={U}', kl=U)]
                return [row(w, ScalarField(p), check, False, f'U={U}, {result.message}', kl=U)]
            if check == 'track':
                try:
                    (track, ranks, equal) = track_matches(w.rd, w.word(), field)
                except PyAlcoveException as e:
                    return [row(w, field, check, False, e.message)]
                return [row(w, field, check, equal, '' if equal else f'{len(set(track.items()) ^ set(ranks.items()))} alcoves differ',
                            rank=sum(track.values()), kl=sum(ranks.values()))]
            if check == 'twisted':
                plain = ajs_track(w.rd, w.word(), field)
                twisted = p0(w.rd, field)
                for s in w.word():
                    twisted = t_out_twisted(t_on_twisted(twisted, s), s)
                verdict = objects_equal(plain, twisted, cap)
                if verdict == 'inconclusive':
                    warnings.warn(f'twisted and plain translation of {w} could not be compared within degree {cap}', RuntimeWarning)
                return [row(w, field, check, verdict != 'unequal', verdict)]
            if check == 'oracle':
                differ = [x for x in bruhat_ideal(w) if generic_leq(x, w) != generic_oracle_leq(x, w, multiplier)]
                return [row(w, field, check, not differ, f'{len(differ)} disagreements' if differ else '')]
            raise ValueError(f'unknown check {check}')

        records = []
        for (name,spec) in self._campaigns.items():
            fields = [ScalarField.parse(tag) for tag in listMe(spec.get('fields', ['Q']))]
            checks = listMe(spec['checks'])
            for label in listMe(spec['types']):
                rd = build_root_datum(label)
                jobs = []
                for w in self.elements(spec, rd):
                    for check in checks:
                        if check in ('bound', 'oracle'):
                            jobs.append((w, None, check))
                        else:
                            jobs.extend((w, field, check) for field in fields)
                jobs = list(dict.fromkeys(jobs))
                v_m(f'{label}: {len(jobs)} jobs on {workers} workers')
                with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
                    for (job, found) in zip(jobs, pool.map(run, jobs)):
                        v_m(f"  {job[0]} {job[1] or ''} {job[2]}: {'ok' if all(r['MATCH'] for r in found) else 'FAILED'}")
                        records.extend(found)
                if self._system is not None:
                    self._system._count_jobs(len(jobs))

        frame = VerifyFrame(pd.DataFrame.from_records(records, columns=VerifyFrame._columns))
        if self._system is not None:
            self._system._last_frame = frame
        return frame
