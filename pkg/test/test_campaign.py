# campaigns, result frames and the spreadsheet export

import os
import warnings
import pytest
import yaml
from pyalcove import AffineSystem
from pyalcove.campaign import CampaignVerifier, load_yaml
from pyalcove.exceptions import PyAlcoveException
from pyalcove.frame_filter import VerifyFrame

short = {'short words': {'types': 'A1~', 'words': ['0', '01', '010'], 'fields': ['Q', 'F3'], 'checks': ['conjecture', 'mone', 'gkm']}}

def test_campaign_object(testparms):
  s = testparms['A1']
  assert hasattr(s,'campaigns'), 'AffineSystem object must have "campaigns"'
  v = s.campaigns
  for f in ['_campaigns', '_settings', '_module', '_system']:
      assert f in dir(v), f'campaign object must have a {f} attribute'
  for f in ['load', 'add_settings', 'get_settings', 'syntax_check', 'elements', 'verify']:
      assert f in dir(v), f'campaign object must have a {f} method'

def test_campaign_settings(testparms):
  v = AffineSystem('A1~').campaigns
  assert not v._campaigns, 'initial campaigns must be empty'
  v.load()
  assert 'rank one base set' in v._campaigns, 'default campaigns come from the packaged module'
  assert v.get_settings('membership_cap')==3, 'default settings'
  assert v.add_settings({'workers': 4}).get_settings('workers')==4, 'settings from a dict'
  assert v.add_settings('cutoff_slack: 6').get_settings()['cutoff_slack']==6, 'settings from a yaml string'
  with pytest.raises(TypeError):
      v.add_settings({'colour': 1})
  with pytest.raises(TypeError):
      v.add_settings({'workers': 'many'})
  with pytest.raises(TypeError):
      v.add_settings(['workers'])
  with pytest.raises(TypeError):
      v.get_settings('colour')
  assert v.load(reset=True).get_settings('workers')==2, 'reset drops added settings'

def test_campaign_elements(testparms):
  s = testparms['A2']
  v = s.campaigns.load()
  assert len(v.elements({'lmax': 2}, s.rd))==10, 'elements up to length 2'
  assert [str(w) for w in v.elements({'words': ['0', '10', '0']}, s.rd)]==['0', '10'], 'listed words, duplicates dropped'
  picked = v.elements({'lmax': 3, 'sample': 4}, s.rd)
  assert len(picked)==4 and picked==v.elements({'lmax': 3, 'sample': 4}, s.rd), 'samples are repeatable with a fixed seed'

def test_campaign_syntax(testparms):
  v = CampaignVerifier()
  with pytest.raises(TypeError):
      assert v.syntax_check(), 'syntax_check() does not load campaigns, but should require a prior load()'
  assert v.load().syntax_check(confirm=False).empty, 'syntax_check() must return OK message for default campaigns'
  assert v.load(campaigns=short).syntax_check(confirm=False).empty, 'syntax_check() must return OK message for custom campaigns'
  assert v.syntax_check()['NOTE'].tolist()==['No problems found'], 'confirmation row'

  for spec in [{'types': 'A1~', 'words': ['012'], 'checks': ['conjecture']},
               {'types': 'Z9~', 'words': ['0'], 'checks': ['conjecture']},
               {'types': 'A1~', 'words': ['0'], 'checks': ['speed']},
               {'types': 'A1~', 'words': ['0'], 'fields': ['F4'], 'checks': ['gkm']},
               {'types': 'A1~', 'words': ['0'], 'lmax': 2, 'checks': ['gkm']},
               {'types': 'A1~', 'words': ['0'], 'colour': 'red', 'checks': ['gkm']},
               {'types': 'A1~', 'words': ['0']}]:
      assert not v.load(campaigns={'bad': spec}).syntax_check(confirm=False).empty, f'syntax_check() must flag {spec}'

  with pytest.warns(FutureWarning):
      v.load(campaigns="twice:\n  types: A1~\n  words: ['0']\n  checks: [gkm]\ntwice:\n  types: A1~\n  words: ['1']\n  checks: [gkm]\n")
  assert 'twice#1' in v._campaigns, 'duplicate campaign names get a suffix'
  with warnings.catch_warnings():
      warnings.simplefilter('error')
      assert yaml.safe_load('a: 1\na: 2\n')=={'a': 2}, 'the renaming loader leaves yaml.safe_load alone'
  with pytest.warns(FutureWarning):
      assert list(load_yaml('a: 1\na: 2\na: 3\n'))==['a', 'a#1', 'a#2'], 'suffixes count up'

  with pytest.warns(SyntaxWarning):
      df = v.verify(campaigns={'bad': {'types': 'A1~', 'words': ['0'], 'checks': ['speed']}})
  assert not df.empty, 'verify() returns the syntax messages'

def test_campaign_verify(testparms):
  s = testparms['A1']
  df = s.campaigns.load(campaigns=short).verify()
  assert isinstance(df, VerifyFrame), 'verify() gives a VerifyFrame'
  assert list(df.columns)==VerifyFrame._columns, 'VerifyFrame columns'
  assert df.shape[0]==36, 'vertices below 0, 01 and 010 for two fields, plus one mone and one gkm row per element and field'
  assert df.failures().empty, 'short words match over Q and F3'
  assert set(df['FIELD'])=={'Q', 'F3'}, 'both fields are run'
  assert df.find(w='010', field='F3').shape[0]==8, 'six vertices, mone and gkm'
  assert df.find(note='gkm*').shape[0]==6, 'selection on NOTE'
  assert df.skip(note='conjecture').shape[0]==12, 'skip removes the vertex rows'

  df = s.campaigns.load(campaigns={'two': {'types': 'A1~', 'words': ['010'], 'fields': ['F2'], 'checks': ['conjecture', 'gkm']}}).verify()
  assert df.failures().shape[0]==2, 'characteristic 2 is refused by the gate and fails GKM'
  assert df.find(note='conjecture*')['NOTE'].str.contains('GKM').all(), 'the gate names the reason'

def test_campaign_checks(testparms):
  s = testparms['A1']
  df = s.campaigns.load(campaigns={'extras': {'types': 'A1~', 'words': ['0', '01'], 'checks': ['track', 'oracle', 'bound']}}).verify()
  assert df.shape[0]==6, 'one row per element and check'
  assert df.failures().empty, f"extra checks fail: {df.failures()['NOTE'].tolist()}"
  assert sorted(df.find(note='bound*')['KL'].astype(int))==[1, 729], 'U of 0 and 01'
  assert set(df.find(note='bound*')['FIELD'])=={'F2', 'F733'}, 'bound runs over the next prime above U'

def test_system_status(testparms):
  s = AffineSystem('A1~')
  for f in ['status', 'type', 'rank', 'cached-kl', 'cached-graphs', 'jobs-run', 'run-time']:
      assert f in s.status, f'status must have a {f} entry'
  assert s.status['status']=='Initial Object', 'status before a run'
  with pytest.raises(PyAlcoveException):
      s.results
  bad = AffineSystem()
  assert bad.status['status']=='Error', 'no type given'
  with pytest.raises(PyAlcoveException):
      bad.element('0')

  frame = s.verify_fancycli(lmax=2, field=testparms['field'])
  assert s.status['status']=='Ready', 'status after a run'
  assert frame['W'].nunique()==5, 'elements up to length 2 in A1~'
  assert s.results.failures().empty, 'rank one runs match'
  assert s.status['jobs-run']>=5, 'jobs are counted'
  assert s.gkm('010')=={'violating_primes': [2]}, 'gkm summary'
  assert str(s.kl('', '010'))=='v^3', 'kl from words'

def test_xls(testparms):
  s = AffineSystem('A1~')
  with pytest.raises(TypeError):
      s.verify2xls()
  s.campaigns.load(campaigns=short).verify()
  s.verify2xls(fileName=testparms['xlsfile'])
  assert os.path.exists(testparms['xlsfile']), 'spreadsheet written'
  os.remove(testparms['xlsfile'])
  with pytest.warns(FutureWarning):
      s.xls(fileName=testparms['xlsfile'])
  assert os.path.exists(testparms['xlsfile']), 'the deprecated name still writes'
