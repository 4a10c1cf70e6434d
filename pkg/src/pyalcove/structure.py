'''Moment graphs over the affine weight lattice, structure algebras and GKM analysis.'''
import json
import random
from functools import reduce
from math import gcd

import networkx as nx
import sympy

from .exceptions import DivisionFailure, PyAlcoveException
from .rootsys import AffineRoot, AffineWeight, build_root_datum, normalize_label
from .weyl import (AffineWeylElem, W_circ, WallCoset, act_dual, bruhat_ideal, bruhat_leq, element,
                   generic_leq, reflection_of, reflection_of_edge, simple_affine_reflections, word_string)


def _sort_key(x):
    if isinstance(x, WallCoset):
        return (x.element.length, x.element.word())
    return (x.length, x.word())


class MomentGraph:
    ''' full subgraph of the affine Bruhat graph on a finite vertex set, or of its quotient by a simple reflection

    Edges carry the normalized affine root of the connecting reflection in the attribute ``label``.
    '''

    def __init__(self, rd, graph, s=None, name=None):
        self.rd = rd
        self.graph = graph
        self.s = s
        self.name = name or f'{rd.label} graph'
        self.vertices = sorted(graph.nodes, key=_sort_key)

    @property
    def is_quotient(self):
        return self.s is not None

    def __contains__(self, x):
        return x in self.graph

    def __len__(self):
        return self.graph.number_of_nodes()

    @property
    def edges(self):
        ''' [(x, y, label)] with x before y in the vertex order '''
        order = {x: i for (i, x) in enumerate(self.vertices)}
        found = []
        for (x, y, label) in self.graph.edges(data='label'):
            found.append((x, y, label) if order[x] < order[y] else (y, x, label))
        return sorted(found, key=lambda e: (order[e[0]], order[e[1]]))

    def label(self, x, y):
        return self.graph.edges[x, y]['label']

    def neighbors(self, x):
        return [(y, self.graph.edges[x, y]['label']) for y in sorted(self.graph.neighbors(x), key=_sort_key)]

    def leq(self, x, y, order='bruhat'):
        if isinstance(x, WallCoset):
            x, y = x.element, y.element
        if order == 'bruhat':
            return bruhat_leq(x, y)
        if order == 'generic':
            return generic_leq(x, y)
        raise ValueError(f'order must be bruhat or generic, not {order!r}')

    def up_edges(self, x, order='bruhat'):
        return [(y, label) for (y, label) in self.neighbors(x) if self.leq(x, y, order)]

    def down_edges(self, x, order='bruhat'):
        return [(y, label) for (y, label) in self.neighbors(x) if self.leq(y, x, order)]

    def subgraph(self, vertices):
        return MomentGraph(self.rd, self.graph.subgraph(vertices).copy(), s=self.s, name=self.name)

    def is_s_invariant(self, s):
        simple = _simple(self.rd, s)
        return all(x*simple in self.graph for x in self.graph.nodes)

    def is_right_stable(self, t):
        return all(x*t in self.graph for x in self.graph.nodes)

    def max_length_difference(self):
        lengths = [_sort_key(x)[0] for x in self.vertices]
        return max(lengths) - min(lengths) if lengths else 0

    def vertex_name(self, x):
        if isinstance(x, WallCoset):
            return f'{word_string(x.element.word(), self.rd) or "e"}|{x.s}'
        return word_string(x.word(), self.rd) or 'e'

    def to_dot(self):
        lines = [f'graph "{self.name}" {{']
        for x in self.vertices:
            lines.append(f'  "{self.vertex_name(x)}";')
        for (x, y, label) in self.edges:
            lines.append(f'  "{self.vertex_name(x)}" -- "{self.vertex_name(y)}" [label="{label}"];')
        lines.append('}')
        return '\n'.join(lines)

    def to_json(self):
        ''' node-link layout with label coordinate vectors (simple roots, then delta) '''
        return {
            'type': self.rd.label,
            'name': self.name,
            's': self.s,
            'nodes': [self.vertex_name(x) for x in self.vertices],
            'links': [{'source': self.vertex_name(x), 'target': self.vertex_name(y),
                       'label': list(label.coordinates), 'text': str(label)} for (x, y, label) in self.edges],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        rd = build_root_datum(data['type'])
        s = data.get('s')

        def vertex(name):
            if s is None:
                return element(rd, name)
            word, _ = name.split('|')
            return WallCoset(element(rd, word), s)
        graph = nx.Graph()
        graph.add_nodes_from(vertex(name) for name in data['nodes'])
        for link in data['links']:
            coords = link['label']
            graph.add_edge(vertex(link['source']), vertex(link['target']), label=AffineRoot.from_value(coords[:-1], coords[-1]))
        return cls(rd, graph, s=s, name=data.get('name'))

    def __repr__(self):
        return f'<MomentGraph {self.name}: {len(self)} vertices, {self.graph.number_of_edges()} edges>'


def _simple(rd, s):
    return simple_affine_reflections(rd)[s]


def ideal_of(rd, ideal):
    ''' vertex set from a word, an element, 'W_circ', or an iterable of elements or words '''
    if isinstance(ideal, AffineWeylElem):
        return set(bruhat_ideal(ideal))
    if isinstance(ideal, str):
        if ideal in ('W_circ', 'Wcirc', 'circ'):
            return set(W_circ(rd))
        return set(bruhat_ideal(element(rd, ideal)))
    vertices = set()
    for x in ideal:
        vertices.add(x if isinstance(x, AffineWeylElem) else element(rd, x))
    return vertices


def build_graph(rd, ideal, name=None):
    ''' full subgraph of the affine Bruhat graph on a vertex set

    Args:
        ideal: a word or element (its Bruhat ideal is taken), 'W_circ', or an explicit collection of vertices
    '''
    vertices = sorted(ideal_of(rd, ideal), key=_sort_key)
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    for (i, x) in enumerate(vertices):
        for y in vertices[i+1:]:
            label = reflection_of_edge(x, y)
            if label is not None:
                graph.add_edge(x, y, label=label)
    if name is None:
        if isinstance(ideal, str):
            name = f'{rd.label} <= {ideal or "e"}'
        elif isinstance(ideal, AffineWeylElem):
            name = f'{rd.label} <= {ideal}'
    return MomentGraph(rd, graph, name=name)


def build_quotient(g, s):
    ''' graph on the cosets {x, xs}; two cosets are joined when a reflection maps one onto the other '''
    rd = g.rd
    simple = _simple(rd, s)
    cosets = sorted({WallCoset.of(x, s) for x in g.vertices}, key=_sort_key)
    graph = nx.Graph()
    graph.add_nodes_from(cosets)
    for (i, a) in enumerate(cosets):
        for b in cosets[i+1:]:
            label = reflection_of_edge(a.element, b.element) or reflection_of_edge(a.element, b.element*simple)
            if label is not None:
                graph.add_edge(a, b, label=label)
    return MomentGraph(rd, graph, s=s, name=f'{g.name} / s{s}')


class ZElement:
    ''' tuple of polynomials indexed by the vertices of a moment graph '''

    def __init__(self, graph, field, values):
        self.graph = graph
        self.field = field
        R = field.ring(graph.rd)
        self.values = {x: R(values.get(x, R.zero)) for x in graph.vertices}

    @classmethod
    def constant(cls, graph, field, value):
        R = field.ring(graph.rd)
        return cls(graph, field, {x: R(value) for x in graph.vertices})

    def __getitem__(self, x):
        return self.values[x]

    def _combine(self, other, op):
        if isinstance(other, ZElement):
            return ZElement(self.graph, self.field, {x: op(p, other.values[x]) for (x, p) in self.values.items()})
        return ZElement(self.graph, self.field, {x: op(p, other) for (x, p) in self.values.items()})

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a*b)

    __rmul__ = __mul__

    def __neg__(self):
        return ZElement(self.graph, self.field, {x: -p for (x, p) in self.values.items()})

    def __eq__(self, other):
        return isinstance(other, ZElement) and self.values == other.values

    def is_zero(self):
        return not any(self.values.values())

    def sigma(self, t):
        ''' (sigma_t z)_x = z_{xt} '''
        return ZElement(self.graph, self.field, {x: self.values[x*t] for x in self.values})

    def __str__(self):
        return '(' + ', '.join(f'{self.graph.vertex_name(x)}: {p.as_expr()}' for (x, p) in self.values.items()) + ')'


def label_form(rd, field, label):
    return field.linear_form(rd, label.coordinates)


def z_membership(z, g=None):
    ''' every edge congruence z_x = z_y mod label holds exactly '''
    g = g or z.graph
    for (x, y, label) in g.edges:
        if (z[x] - z[y]).rem(label_form(g.rd, z.field, label)):
            return False
    return True


def c_lambda(weight, g, field):
    ''' c(lambda)_x = x(lambda) '''
    if not isinstance(weight, AffineWeight):
        raise TypeError(f'c_lambda needs an AffineWeight, not {type(weight).__name__}')
    return ZElement(g, field, {x: field.weight_form(g.rd, act_dual(x, weight)) for x in g.vertices})


def _half(field):
    if field.characteristic == 2:
        raise PyAlcoveException('the structure algebra needs 2 to be invertible, characteristic 2 is not supported')
    return field.scalar(1)/field.scalar(2)


def dinz_element(beta, w, g, field):
    ''' z with z_w = 0, z_xw in Z'delta for even x and in beta + Z'delta for odd x in the subgroup generated by the s_{beta,n}:
    z_x = (beta - x w^-1 (beta))/2 '''
    half = _half(field)
    rd = g.rd
    beta_weight = AffineWeight.of_root(rd, beta)
    image = act_dual(w.inverse(), beta_weight)
    beta_form = field.weight_form(rd, beta_weight)
    return ZElement(g, field, {x: (beta_form - field.weight_form(rd, act_dual(x, image)))*half for x in g.vertices})


def _in_beta_subgroup(y, beta):
    ''' parity (0 or 1) of y in the subgroup generated by the s_{beta,n}, None outside it '''
    rd = y.rd
    if y.matrix == AffineWeylElem.identity(rd).matrix:
        a = rd.coroot_vector(beta)
        j = next(i for (i, c) in enumerate(a) if c)
        m, remainder = divmod(y.shift[j], a[j])
        if not remainder and all(m*c == s for (c, s) in zip(a, y.shift)):
            return 0
        return None
    found = reflection_of(y)
    if found is not None and tuple(found[0]) == tuple(beta):
        return 1
    return None


def dinz_parity(z, beta, w):
    ''' the parity conditions on the vertices xw, x in the subgroup generated by the s_{beta,n} '''
    rd = z.graph.rd
    beta_form = z.field.weight_form(rd, AffineWeight.of_root(rd, beta))
    w_inverse = w.inverse()
    for vertex in z.graph.vertices:
        parity = _in_beta_subgroup(vertex*w_inverse, beta)
        if parity is None:
            continue
        rest = z[vertex] - beta_form if parity else z[vertex]
        if any(any(exponents[:-1]) for exponents in rest.keys()):
            return False
    return True


def sigma_decompose(z, t):
    ''' (z_plus, z_prime) with z = z_plus + c(alpha_t) z_prime, both sigma_t-invariant '''
    g = z.graph
    if not g.is_right_stable(t):
        raise PyAlcoveException(f'vertex set of {g.name} is not stable under right multiplication by {t}')
    half = _half(z.field)
    found = reflection_of(t)
    if found is None:
        raise ValueError(f'{t} is not a reflection')
    alpha_t = normalize_label(AffineRoot(*found))
    c = c_lambda(alpha_t.value(g.rd), g, z.field)
    swapped = z.sigma(t)
    plus = (z + swapped)*half
    minus = (z - swapped)*half
    quotients = {}
    for x in g.vertices:
        q, r = minus[x].div(c[x])
        if r:
            raise DivisionFailure(f'{minus[x].as_expr()} is not divisible by {c[x].as_expr()} at {g.vertex_name(x)}')
        quotients[x] = q
    return plus, ZElement(g, z.field, quotients)


def z_random(g, field, seed=0, degree=2, terms=3):
    ''' random homogeneous element of the structure algebra, sums of products of c(lambda) and scalars '''
    rng = random.Random(seed)
    rd = g.rd
    R = field.ring(rd)
    total = ZElement(g, field, {})
    if degree == 0:
        return ZElement.constant(g, field, R(field.scalar(rng.randint(-5, 5))))
    for _ in range(terms):
        product = ZElement.constant(g, field, R(field.scalar(rng.randint(-5, 5))))
        for _ in range(degree//2):
            root = rng.choice(rd.positive_roots)
            weight = AffineWeight.of_root(rd, root, rng.randint(-2, 2))
            factor = c_lambda(weight, g, field)
            if rng.random() < 0.5:
                factor = factor + ZElement.constant(g, field, field.linear_form(rd, [rng.randint(-2, 2) for _ in range(rd.rank+1)]))
            product = product*factor
        total = total + product
    return total


def _minor_gcd(u, v):
    minors = [u[i]*v[j] - u[j]*v[i] for i in range(len(u)) for j in range(i+1, len(u))]
    return reduce(gcd, (abs(m) for m in minors), 0)


def gkm_pairs(g):
    ''' (vertex, label, label, gcd of 2x2 minors) for every pair of edges at a common vertex '''
    found = []
    for x in g.vertices:
        labels = [label for (_, label) in g.neighbors(x)]
        for (i, a) in enumerate(labels):
            for b in labels[i+1:]:
                found.append((x, a, b, _minor_gcd(a.coordinates, b.coordinates)))
    return found


def gkm_check(g, field):
    ''' (vertex, label, label) triples whose labels are dependent over the field '''
    p = field.characteristic
    return [(x, a, b) for (x, a, b, m) in gkm_pairs(g) if m == 0 or (p and m % p == 0)]


def gkm_prime_set(g):
    ''' every prime p for which some pair of labels at a common vertex is dependent over F_p '''
    primes = set()
    for (_, _, _, m) in gkm_pairs(g):
        if m > 1:
            primes.update(sympy.primefactors(m))
    return sorted(primes)
