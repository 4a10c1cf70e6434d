# command line front end

import json
from pyalcove.cli import build_parser, commands, main

def test_parser(testparms):
  args = build_parser().parse_args(['kl', '--y', '010'])
  assert args.type=='A1~' and args.x=='' and args.format=='json', 'defaults'
  assert 'ajs-track' in commands, 'command list'

def test_describe(testparms, capsys):
  assert main(['describe', '--type', 'A2~'])==0, 'describe exits 0'
  data = json.loads(capsys.readouterr().out)
  assert data['rank']==2 and len(data['positive_roots'])==3, 'A2 has three positive roots'
  assert data['simple_reflections']==3, 'affine A2 has three simple reflections'

def test_kl(testparms, capsys):
  assert main(['kl', '--type', 'A1~', '--x', '', '--y', '010'])==0, 'kl exits 0'
  assert json.loads(capsys.readouterr().out)=='v^3', 'h_{e,010} in A1~'

def test_gkm(testparms, capsys):
  assert main(['gkm', '--ideal', '010'])==0, 'gkm exits 0'
  assert json.loads(capsys.readouterr().out)=={'violating_primes': [2]}, 'characteristic 2 breaks GKM below 010'
  assert main(['gkm', '--ideal', '010', '--field', 'F2'])==0
  assert json.loads(capsys.readouterr().out)['triples']>0, 'failing pairs over F2'

def test_bm(testparms, capsys):
  assert main(['bm', '--w', '010', '--field', 'Fp', '--p', str(testparms['prime'])])==0, 'B_010 matches'
  data = json.loads(capsys.readouterr().out)
  assert data['match'] and data['w']=='010', 'json result'
  assert main(['bm', '--w', '010', '--field', 'F2'])==2, 'the GKM gate exits 2'
  assert 'GKM' in capsys.readouterr().err, 'the reason goes to stderr'

def test_scan(testparms, capsys):
  assert main(['scan', '--w', '010', '--primes', '2,3'])==1, 'a failing prime exits 1'
  data = json.loads(capsys.readouterr().out)
  assert not data['2']['match'] and data['3']['match'], 'only 2 fails'

def test_verify(testparms, capsys):
  assert main(['verify', '--lmax', '2', '--workers', '1'])==0, 'rank one elements up to length 2 match'
  data = json.loads(capsys.readouterr().out)
  assert len(data['match'])==5 and all(data['match'].values()), 'one entry per element'
  assert main(['verify', '--lmax', '3', '--sample', '3', '--format', 'table'])==0
  assert 'CAMPAIGN' in capsys.readouterr().out, 'table output prints the frame'

def test_bound_and_track(testparms, capsys):
  assert main(['bound', '--word', '0,1'])==0
  assert json.loads(capsys.readouterr().out)['U']==729, 'U of 01 in A1~'
  assert main(['ajs-track', '--word', '01'])==0, 'the track of 01 matches the Bott-Samelson sheaf'
  assert json.loads(capsys.readouterr().out)['sheaf_match'], 'json flag'

def test_errors(testparms, capsys):
  assert main(['describe', '--type', 'Z9~'])==2, 'unknown type exits 2'
  assert 'unknown type label' in capsys.readouterr().err, 'message on stderr'
  assert main(['kl', '--x', '2'])==2, 'bad word exits 2'
