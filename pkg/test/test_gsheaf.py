# sheaves on moment graphs, sections and translation

import pytest
from pyalcove.exceptions import PyAlcoveException
from pyalcove.gsheaf import (GradedFreeModule, bott_samelson_sheaf, character, psi_wall, restriction_surjective,
                             sections, sheaf_B_e, stalk_ranks, subquotient, theta_tilde, tson)
from pyalcove.hecke import LaurentPoly, PeriodicElem, bott_samelson, periodic_act, rho_action, to_hecke, v
from pyalcove.rootsys import RootDatum
from pyalcove.structure import build_graph
from pyalcove.weyl import element, parse_word, simple_affine_reflections, subword_ideal

A1 = RootDatum('A1~')
A2 = RootDatum('A2~')

def test_graded_modules(testparms):
  M = GradedFreeModule((0,2,2))
  assert M.rank==3, 'rank counts generators'
  assert M.graded_rank()==1 + 2*v**2, 'graded rank in powers of v'
  assert M.shift(1).degrees==(1,3,3), 'shift raises every degree'
  assert GradedFreeModule((0,)).dimension(2, 2)==2, 'two linear forms in two variables'

def test_sheaf_B_e(testparms):
  field = testparms['field']
  g = build_graph(A1, '0')
  F = sheaf_B_e(g, field)
  assert stalk_ranks(F)=={element(A1, ''): 1, element(A1, '0'): 0}, 'B_e lives on e'
  assert sections(F).degrees==(0,), 'global sections of B_e'
  with pytest.raises(PyAlcoveException):
      sheaf_B_e(build_graph(A1, ['0']), field)

def test_theta_character(testparms):
  field = testparms['field']
  g = build_graph(A1, '1')
  F = theta_tilde(sheaf_B_e(g, field), 1)
  e, s = element(A1, ''), element(A1, '1')
  assert character(F)==PeriodicElem(A1, {e: v**2, s: v}, basis='W'), 'character of theta applied to B_e'
  with pytest.raises(PyAlcoveException):
      tson(sheaf_B_e(build_graph(A1, '01'), field), 0)

def test_bott_samelson_ranks(testparms):
  field = testparms['field']
  for (rd, words) in [(A1, testparms['words_A1']), (A2, testparms['words_A2'])]:
      for word in words:
          F = bott_samelson_sheaf(rd, word, field)
          expected = bott_samelson(rd, word).evaluate(1)
          ranks = {x: r for (x, r) in stalk_ranks(F).items() if r}
          assert ranks==expected, f'stalk ranks of BS({word}) in {rd.label} are the Bott-Samelson coefficients at 1'

def test_wall_sections(testparms):
  field = testparms['field']
  F = bott_samelson_sheaf(A1, '01', field)
  for x in [element(A1, ''), element(A1, '0')]:
      found, expected = psi_wall(F, x, 1)
      assert found==expected, f'sections over the wall at {x}'
  assert restriction_surjective(F, [element(A1, '01'), element(A1, '0')]), 'sections restrict onto an upper set'

def test_charmaps(testparms):
  # the generic character is A_e acted on by the Bruhat character read in the Hecke algebra
  field = testparms['field']
  for (rd, words) in [(A1, ['', '0', '1', '01', '10', '010', '101', '0101']), (A2, ['', '0', '01', '12', '010', '012'])]:
      e = element(rd, '')
      for word in words:
          F = bott_samelson_sheaf(rd, word, field)
          assert character(F, 'generic')==periodic_act(e, to_hecke(character(F))), f'character maps of BS({word}) in {rd.label}'
  assert character(sheaf_B_e(build_graph(A2, '0'), field), 'generic')==PeriodicElem(A2, {element(A2, ''): 1}), 'B_e gives A_e'

def _translations(rd, words, field):
  ''' (F, s, theta_s F) with F extended to the graph of the longer word '''
  for word in words:
      F = bott_samelson_sheaf(rd, word, field)
      for s in range(rd.rank + 1):
          graph = build_graph(rd, subword_ideal(rd, parse_word(rd, word) + (s,)))
          F_s = F.extended(graph)
          yield F_s, s, theta_tilde(F_s, s)

def test_translation_characters(testparms):
  field = testparms['field']
  for (rd, words) in [(A1, ['', '0', '1', '01', '10', '00']), (A2, ['', '0', '1', '2'])]:
      for (F, s, G) in _translations(rd, words, field):
          simple = simple_affine_reflections(rd)[s]
          for order in ['bruhat', 'generic']:
              assert character(G, order)==rho_action(character(F, order), s, order).scale(v), f'theta{s}({F.name}) for the {order} order'
              for x in G.graph.vertices:
                  xs = x*simple
                  if not G.graph.leq(x, xs, order):
                      continue
                  both = subquotient(F, x, order).degrees + subquotient(F, xs, order).degrees
                  assert sorted(subquotient(G, x, order).degrees)==sorted(d+2 for d in both), f'lower subquotient of theta{s}({F.name}) at {x}, {order}'
                  assert sorted(subquotient(G, xs, order).degrees)==sorted(both), f'upper subquotient of theta{s}({F.name}) at {xs}, {order}'

def test_subquotient_totals(testparms):
  # subquotients along a filtration add up to the global sections
  field = testparms['field']
  for (rd, words) in [(A1, testparms['words_A1']), (A2, ['', '0', '01', '12'])]:
      for word in words:
          F = bott_samelson_sheaf(rd, word, field)
          total = sections(F)
          for order in ['bruhat', 'generic']:
              parts = [subquotient(F, x, order) for x in F.graph.vertices]
              assert sum(m.rank for m in parts)==sum(stalk_ranks(F).values())==total.module.rank, f'generic rank of BS({word}), {order}'
              assert sum((m.graded_rank() for m in parts), LaurentPoly())==total.module.graded_rank(), f'graded rank of BS({word}), {order}'

def test_open_restrictions(testparms):
  field = testparms['field']
  for (rd, words) in [(A1, testparms['words_A1']), (A2, ['0', '01', '12'])]:
      for word in words:
          F = bott_samelson_sheaf(rd, word, field)
          g = F.graph
          for order in ['bruhat', 'generic']:
              for x in g.vertices:
                  upper = [y for y in g.vertices if g.leq(x, y, order)]
                  assert restriction_surjective(F, upper), f'sections of BS({word}) onto the {order} upper set of {x}'
