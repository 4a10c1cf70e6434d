# alcove-indexed module data and the translation functors on it

import pytest
from pyalcove.ajs import (LocalRingElem, Presentation, a_const, ajs_track, d_const, gamma_constants, model_presentations,
                          normal_form_search, objects_equal, p0, pattern_tags, submodule_equal, t_on, t_on_twisted, t_out,
                          t_out_twisted, track_matches, translate)
from pyalcove.exceptions import DivisionFailure, PyAlcoveException
from pyalcove.rootsys import RootDatum
from pyalcove.weyl import Alcove, element, elements_upto, parse_word, wall_minus, wall_of, wall_plus

A1 = RootDatum('A1~')
A2 = RootDatum('A2~')

def test_local_ring(testparms):
  field = testparms['field']
  alpha = (1,0)
  a = LocalRingElem.root(A2, field, alpha)
  a_inv = LocalRingElem.root_inverse(A2, field, alpha)
  assert a*a_inv==1, 'alpha times its inverse'
  assert a.inverse()==a_inv, 'roots are units of S^0'
  assert not a_inv.in_ring(alpha), 'alpha^-1 is not in S^alpha'
  assert a_inv.in_ring((0,1)) and a_inv.in_ring(), 'alpha^-1 is in S^beta for the other roots'
  assert (a*a_inv).in_ring(alpha), 'cancelled denominators do not count'
  with pytest.raises(DivisionFailure):
      (a + 1).inverse()
  with pytest.raises(DivisionFailure):
      (a - a).inverse()

def test_a_const(testparms):
  field = testparms['field']
  beta = (1,)
  e = Alcove(element(A1, ''))
  for s in range(2):
      B = wall_of(e, s)
      alpha, _ = B.hyperplane()
      assert a_const(wall_plus(B), beta, s, field)==-LocalRingElem.root(A1, field, alpha), 'upper side of the wall gives -alpha'
      assert a_const(wall_minus(B), beta, s, field)==LocalRingElem.root_inverse(A1, field, alpha), 'lower side gives alpha^-1'
  ones = 0
  for w in elements_upto(A2, 2):
      A = Alcove(w)
      for s in range(3):
          alpha, _ = wall_of(A, s).hyperplane()
          for beta in A2.positive_roots:
              a = a_const(A, beta, s, field)
              if A2.is_positive(A2.reflect(alpha, beta)):
                  assert a==1, f'a is 1 when s_beta keeps alpha positive at {A}, {beta}'
                  ones += 1
              else:
                  assert a!=1, f'a is a root or an inverse root at {A}, {beta}'
  assert ones, 'the constant case occurs in rank two'

def test_d_const(testparms):
  field = testparms['field']
  for w in elements_upto(A2, 2):
      A = Alcove(w)
      for beta in A2.positive_roots:
          c = LocalRingElem.root(A2, field, beta)*d_const(A, beta, field)
          assert c.in_ring(beta) and c.inverse().in_ring(beta), f'beta d_A is a unit of S^beta at {A}, {beta}'
          assert len(gamma_constants(A, beta, field))==2, 'alcoves are never fixed by beta_up'
      for s in range(3):
          B = wall_of(A, s)
          alpha, _ = B.hyperplane()
          assert d_const(wall_minus(B), alpha, field)==LocalRingElem.root_inverse(A2, field, alpha), 'd at the lower alcove of a wall'
          assert d_const(B, alpha, field)==1, 'd at a wall of its own type'
          assert len(gamma_constants(B, alpha, field))==1, 'a wall on a beta hyperplane is fixed by beta_up'

def test_p0(testparms):
  field = testparms['field']
  e = Alcove(element(A2, ''))
  P = p0(A2, field)
  assert P.ranks()=={e: 1}, 'P0 lives on A_e'
  for beta in A2.positive_roots:
      pres = P.presentation(e, beta)
      assert pres.dims==(1,0) and len(pres)==1, 'S^beta embedded in the first block'
  data = P.to_json()
  assert data['orbit']=='A' and data['ranks']=={'e': 1}, 'json layout'

def test_functor_orbits(testparms):
  field = testparms['field']
  P = p0(A1, field)
  N = t_on(P, 0)
  assert N.orbit=='A^0', 'translation onto the wall of type 0'
  M = t_out(N)
  assert M.ranks()=={Alcove(element(A1, '')): 1, Alcove(element(A1, '0')): 1}, 'both alcoves of the wall'
  assert translate(P, 0).ranks()==M.ranks(), 'translate is out after on'
  with pytest.raises(PyAlcoveException):
      t_out(P)
  with pytest.raises(PyAlcoveException):
      t_on(N, 1)
  with pytest.raises(PyAlcoveException):
      t_out(N, 1)

def test_parallel_tracks(testparms):
  field = testparms['field']
  for (rd, words) in [(A1, testparms['words_A1']), (A2, testparms['words_A2'])]:
      for word in words:
          track, sheaf, same = track_matches(rd, word, field)
          assert same, f'ranks of the track of {word!r} in {rd.label}: {track} against {sheaf}'
  assert ajs_track(A1, '01', field).name=='T(0,1)P0', 'track names list the word'

def test_submodule_equal(testparms):
  field = testparms['field']
  beta = (1,)
  b = LocalRingElem.root(A1, field, beta)
  one = LocalRingElem.constant(A1, field, 1)
  zero = LocalRingElem.constant(A1, field, 0)
  X = Presentation(beta, (1,1), True, [(2, (b, zero)), (0, (one, one))])
  Y = Presentation(beta, (1,1), True, [(2, (b, zero)), (0, (one + b, one))])
  assert submodule_equal(X, X)=='equal', 'same generators'
  assert submodule_equal(X, Y)=='equal', '(1+b, 1) = (1, 1) + (b, 0)'
  U = Presentation(beta, (1,1), True, [(0, (one, zero))])
  V = Presentation(beta, (1,1), True, [(2, (b, zero))])
  assert submodule_equal(U, V)=='unequal', '1 is not in b S^b'
  with pytest.raises(ValueError):
      submodule_equal(X, Presentation(beta, (1,0), True, [(0, (one,))]))

def test_twisted_functors(testparms):
  field = testparms['field']
  for word in ['', '0', '1', '00', '01', '10', '11']:
      M = p0(A1, field)
      for s in parse_word(A1, word):
          M = t_out_twisted(t_on_twisted(M, s), s)
      plain = ajs_track(A1, word, field)
      assert M.ranks()==plain.ranks(), f'twisted and plain tracks of {word} have the same ranks'
      assert objects_equal(M, plain)=='equal', f'twisted and plain tracks of {word} agree'

def test_normal_forms(testparms):
  field = testparms['field']
  e = Alcove(element(A1, ''))
  P = p0(A1, field)
  found = normal_form_search(P.presentation(e, (1,)))
  assert found and pattern_tags(found[0])==['V'], 'P0 at A_e is a single V piece'
  M = translate(P, 0)
  for beta in A1.positive_roots:
      for F in M.facets_with_data(beta):
          assert normal_form_search(M.presentation(F, beta)), f'presentation at {F}, {beta} splits into model pieces'
  with pytest.raises(ValueError):
      model_presentations((1,), (1,0), [('W', (LocalRingElem.constant(A1, field, 1),), ())])

def test_scaling_mod_beta(testparms):
  # (a,1)M(A,beta) only depends on the unit a modulo beta
  field = testparms['field']
  beta = (1,0)
  a = LocalRingElem.root(A2, field, (0,1))
  b = LocalRingElem.root(A2, field, (1,1))
  for M in [translate(p0(A2, field), 0), translate(p0(A2, field), 1), ajs_track(A2, '01', field)]:
      for A in M.facets_with_data(beta):
          pres = M.presentation(A, beta)
          assert submodule_equal(pres.scaled(a), pres.scaled(b))=='equal', f'{M.name} at {A}: alpha2 and alpha1+alpha2 scale alike'

def test_d_const_walls(testparms):
  # d at the upper alcove of a wall, from d at the lower one
  field = testparms['field']
  for w in elements_upto(A2, 2):
      for s in range(3):
          B = wall_of(Alcove(w), s)
          alpha, _ = B.hyperplane()
          for beta in A2.positive_roots:
              d_minus = d_const(wall_minus(B), beta, field)
              d_plus = d_const(wall_plus(B), beta, field)
              image = A2.reflect(alpha, beta)
              if tuple(beta)==tuple(alpha):
                  assert d_minus==LocalRingElem.root_inverse(A2, field, beta), f'd at the lower side of {B}'
                  assert d_const(B, beta, field)==1, f'd at {B} of its own type'
              elif A2.is_positive(image):
                  assert d_plus==d_minus, f'd agrees on both sides of {B} for {beta}'
              else:
                  minus_image = tuple(-c for c in image)
                  expected = LocalRingElem.root(A2, field, alpha)*LocalRingElem.root(A2, field, minus_image)*d_minus
                  assert d_plus==expected, f'd jumps by alpha_B (-s_beta alpha_B) across {B} for {beta}'
