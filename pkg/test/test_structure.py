# moment graphs and the structure algebra

import pytest
from pyalcove.exceptions import PyAlcoveException
from pyalcove.rootsys import AffineRoot, AffineWeight, RootDatum, normalize_label
from pyalcove.scalars import ScalarField
from pyalcove.structure import (MomentGraph, build_graph, build_quotient, c_lambda, dinz_element, dinz_parity,
                                gkm_check, gkm_prime_set, sigma_decompose, z_membership, z_random)
from pyalcove.weyl import element, reflection_of

A1 = RootDatum('A1~')
A2 = RootDatum('A2~')

def test_graph_shape(testparms):
  g = build_graph(A1, '010')
  assert len(g)==6, 'six vertices below 010'
  assert len(g.edges)==9, 'every pair below 010 of different length parity is joined by a reflection'
  assert g.is_s_invariant(0), 'the ideal of 010 is stable under its right descent'
  assert not build_graph(A1, '01').is_s_invariant(0), '01 has no right descent 0'
  e = element(A1, '')
  assert [y for (y, _) in g.down_edges(e)]==[], 'nothing below e'
  assert len(g.up_edges(e))==3, 'e is joined to the three reflections below 010'

def test_graph_json(testparms):
  g = build_graph(A2, '012')
  data = g.to_json()
  assert MomentGraph.from_json(data).to_json()==data, 'json layout re-reads into the same graph'
  assert g.to_dot().startswith('graph "'), 'dot export'
  q = build_quotient(build_graph(A1, '010'), 0)
  assert len(q)==3, 'three cosets below 010'
  assert MomentGraph.from_json(q.to_json()).to_json()==q.to_json(), 'quotient graphs re-read too'

def test_gkm(testparms):
  g = build_graph(A1, '010')
  assert gkm_prime_set(g)==[2], 'labels a and a+2d are dependent mod 2'
  assert gkm_check(g, testparms['field'])==[], f"GKM over {testparms['field']}"
  assert gkm_check(g, ScalarField(2)), 'GKM fails over F2'
  assert gkm_prime_set(build_graph(A1, '01'))==[], 'no bad primes below 01'
  for (label, primes) in [('B2~', [2]), ('G2~', [2, 3])]:
      assert gkm_prime_set(build_graph(RootDatum(label), 'W_circ'))==primes, f'bad primes on the restricted graph of {label}'
  for label in ['A1~', 'A2~', 'B2~', 'G2~']:
      rd = RootDatum(label)
      assert all(p<rd.coxeter_number for p in gkm_prime_set(build_graph(rd, 'W_circ'))), f'primes from the Coxeter number on pass for {label}'

def test_c_lambda(testparms):
  field = testparms['field']
  g = build_graph(A2, '012')
  for weight in [AffineWeight((1,0)), AffineWeight((0,1), 2), AffineWeight.delta_of(A2)]:
      z = c_lambda(weight, g, field)
      assert z_membership(z), f'c({weight}) lies in the structure algebra'
  with pytest.raises(TypeError):
      c_lambda((1,0), g, field)
  assert z_membership(c_lambda(AffineWeight((1,1)), g, ScalarField(3))), 'the sum of the fundamental weights is a root over F3'
  with pytest.raises(PyAlcoveException) as failed:
      c_lambda(AffineWeight((1,0)), g, ScalarField(3))
  assert 'root lattice' in failed.value.message, 'weights off the root lattice are refused over F3'

def test_dinz(testparms):
  field = testparms['field']
  for (rd, word) in [(A1, '010'), (A2, '012')]:
      g = build_graph(rd, word)
      w = element(rd, word)
      for beta in rd.positive_roots:
          z = dinz_element(beta, w, g, field)
          assert z_membership(z), f'dinz element for {beta} lies in Z'
          assert z[w]==0, 'dinz element vanishes at w'
          assert dinz_parity(z, beta, w), f'parity conditions for {beta}'
  with pytest.raises(PyAlcoveException):
      dinz_element((1,), element(A1, '0'), build_graph(A1, '0'), ScalarField(2))

def test_sigma_decompose(testparms):
  field = testparms['field']
  g = build_graph(A1, '010')
  t = element(A1, '0')
  alpha_t = normalize_label(AffineRoot(*reflection_of(t)))
  c = c_lambda(alpha_t.value(A1), g, field)
  for seed in range(100):
      z = z_random(g, field, seed=testparms['seed']+seed)
      assert z_membership(z), 'random elements lie in Z'
      plus, prime = sigma_decompose(z, t)
      assert plus.sigma(t)==plus and prime.sigma(t)==prime, 'both parts are sigma_t invariant'
      assert plus + c*prime==z, 'z = z_plus + c(alpha_t) z_prime'
  with pytest.raises(PyAlcoveException):
      sigma_decompose(z_random(build_graph(A1, '01'), field), t)
