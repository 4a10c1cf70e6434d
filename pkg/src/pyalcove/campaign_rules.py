'''verification campaigns for the pyalcove campaigns.verify() service.
This module is imported from load() on a campaigns object.
load() expects a dict for campaigns and for settings, or a yaml str representing these objects.

functions:
    campaigns: names the element selections, coefficient fields and checks to run.
    settings: numeric defaults used while the campaigns run.
'''

def campaigns(self, format='yaml'):
    '''generate a dict (or yaml str) of campaigns, keyed by campaign name.

    each campaign allows types, lmax, words, select, sample, fields, checks and note.

    types is one affine type label (A1~) or a list of them.

    the elements are chosen by lmax (every element up to that length), words (a list of words in
    the simple reflections, the same list for every type) or select: W_circ (the Bruhat ideal of the base element).
    sample: n draws n elements from the selection with the seed in settings.

    fields lists Q and prime fields F3, F5, ..., checks lists one or more of

    conjecture: stalk ranks of the canonical sheaf against h_{x,w}(1)
    mone: rank one exactly where h_{x,w}(1) is one
    gkm: labels at each vertex pairwise independent over the field
    bound: every prime field above the bound U(w) reproduces the Kazhdan-Lusztig values
    track: translation functors on the AJS side give the ranks of the Bott-Samelson sheaf
    twisted: twisted and plain translation functors give the same object
    oracle: generic order agrees with the translation oracle below w
    '''

    _campaigns = '''
small rank one:
  types: A1~
  lmax: 3
  fields: [Q, F3, F5]
  checks: [conjecture, mone, gkm]
  note: canonical sheaves on short intervals

rank one base set:
  types: A1~
  select: W_circ
  fields: [Q]
  checks: [conjecture, oracle]

rank two words:
  types: A2~
  words: ["", "0", "01", "012", "010"]
  fields: [Q, F7]
  checks: [conjecture, gkm]

characteristic two:
  types: A1~
  words: ["010"]
  fields: [F2]
  checks: [gkm]
  note: labels alpha and alpha+2d agree mod 2, expected to fail

translation tracks:
  types: [A1~, A2~]
  words: ["0", "01", "10"]
  fields: [Q]
  checks: [track]

twisted functors:
  types: A1~
  words: ["0", "01"]
  fields: [Q]
  checks: [twisted]

bounds:
  types: A1~
  words: ["0", "01"]
  checks: [bound]
  note: runs over the first prime above U(w)
'''
    return _campaigns if format=='yaml' else None


def settings(self):
    '''generate a yaml str with the numeric defaults

    cutoff_slack: generators this close below the section cutoff stop the run
    membership_cap: degree cap for the submodule membership search
    oracle_multiplier: size of the translation used by the generic order oracle
    seed: random draws for sample:
    workers: threads running elements in parallel
    '''

    return '''
cutoff_slack: 4
membership_cap: 3
oracle_multiplier: 8
seed: 20240517
workers: 2
'''
