# canonical sheaves against Kazhdan-Lusztig values

import re
import pytest
from pyalcove.bm import BMResult, bm_sheaf, check_bm_properties, check_mone, prime_scan, rank_jumps, smooth_locus, verify_conjecture
from pyalcove.exceptions import CutoffInstability, GKMViolation
from pyalcove.frame_filter import VerifyFrame
from pyalcove.rootsys import RootDatum
from pyalcove.scalars import ScalarField
from pyalcove.weyl import W_circ, bruhat_ideal, element, elements_upto

A1 = RootDatum('A1~')
A2 = RootDatum('A2~')

def test_ranks_A1(testparms):
  field = testparms['field']
  for word in testparms['words_A1']:
      w = element(A1, word)
      result = verify_conjecture(w, field)
      assert result.match, f'stalk ranks of B_{w} over {field} are h_x,w(1)'
      assert result.graded_match, f'graded stalks of B_{w} follow the KL polynomials'
      assert set(result.ranks())==set(bruhat_ideal(w)), 'one stalk per vertex below w'
  w = element(A1, '010')
  assert bm_sheaf(w, field).degrees()[element(A1, '')]==(0,), 'the constant section generates the stalk at a smooth point'

def test_ranks_A2(testparms):
  field = testparms['field']
  for word in testparms['words_A2']:
      result = bm_sheaf(element(A2, word), field)
      assert result.match, f'stalk ranks of B_{word} over {field}'
      assert check_mone(result.w, result=result), 'rank one exactly where h(1) is one'
      assert check_bm_properties(result)==[], f'B_{word} fails {check_bm_properties(result)}'

def test_smooth_locus(testparms):
  w = element(A1, '010')
  assert smooth_locus(w, testparms['field'])==set(bruhat_ideal(w)), 'every A1~ Schubert variety is rationally smooth'

def test_gkm_gate(testparms):
  w = element(A1, '010')
  with pytest.raises(GKMViolation) as e:
      bm_sheaf(w, ScalarField(2))
  assert e.value.primes==[2], 'the gate names the failing characteristic'
  assert e.value.triples, 'the gate lists the dependent labels'

def test_cutoff(testparms):
  with pytest.raises(CutoffInstability) as e:
      bm_sheaf(element(A1, '010'), testparms['field'], cutoff=2)
  assert e.value.cutoff==2, 'the exception carries the cutoff'

def test_prime_scan(testparms):
  w = element(A1, '010')
  scan = prime_scan(w, [7, 2, 5, 3, 5], workers=2)
  assert list(scan)==[2,3,5,7], 'one result per prime, sorted'
  assert isinstance(scan[2], GKMViolation), 'characteristic 2 is rejected by the gate'
  for p in [3,5,7]:
      assert isinstance(scan[p], BMResult) and scan[p].match, f'B_010 over F{p} matches'
  jumps = rank_jumps(scan, bm_sheaf(w))
  assert jumps[2] is None and all(jumps[p]==[] for p in [3,5,7]), 'no rank jumps above 2'

def test_result_frame(testparms):
  result = bm_sheaf(element(A1, '010'), testparms['field'])
  df = result.frame(campaign=testparms['testname'])
  assert isinstance(df, VerifyFrame), 'frame() gives a VerifyFrame'
  assert list(df.columns)==VerifyFrame._columns, 'VerifyFrame columns'
  assert df.shape[0]==6, 'one row per vertex'
  assert df.find(x='01*').shape[0]==2, 'generic selection on X'
  assert df.find(x=re.compile('(0|1)$')).shape[0]==2, 'regex selection on X'
  assert df.skip(match=True).empty, 'no mismatches'
  assert df.failures().empty, 'failures() is empty for a matching run'
  with pytest.raises(TypeError):
      df.find(vertex='e')
  data = result.to_json()
  assert data['w']=='010' and data['stalks']['e']==[0] and data['kl']['e']==1, 'json layout'

def test_ranks_up_to_length_four(testparms):
  if testparms['field'].characteristic:
      pytest.skip('the full run is made over Q')
  field = testparms['field']
  for w in sorted(W_circ(A1), key=lambda x: x.length):
      assert verify_conjecture(w, field).match, f'B_{w} on the restricted set of A1~'
  for w in elements_upto(A2, 4):
      result = verify_conjecture(w, field)
      assert result.match, f'stalk ranks of B_{w} are h_x,w(1)'
      assert check_mone(w, result=result), f'rank one exactly where h_x,{w}(1) is one'

def test_vertex_order(testparms):
  # the stalks do not depend on the order among vertices of the same length
  field = testparms['field']
  for (rd, word) in [(A1, '010'), (A2, '012'), (A2, '0102')]:
      w = element(rd, word)
      assert bm_sheaf(w, field).degrees()==bm_sheaf(w, field, tie_break='reverse').degrees(), f'B_{word} in {rd.label}'
