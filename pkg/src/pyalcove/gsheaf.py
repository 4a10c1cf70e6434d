'''Graded free modules, polynomial matrices and sheaves on moment graphs.

Stalks are graded free modules given by their generator degrees. A generator of
degree d spans S in degrees d, d+2, ... since the variables sit in degree 2.
Edge stalks are free over S/alpha(E) and restriction maps are kept reduced modulo
the edge label. Section spaces are computed one degree at a time as kernels of
linear systems over the coefficient field.
'''
from collections import Counter

from .exceptions import CutoffInstability, FreeFitFailure, PyAlcoveException
from .hecke import LaurentPoly, PeriodicElem
from .scalars import monomials
from .structure import build_graph, build_quotient, label_form
from .weyl import (AffineWeylElem, WallCoset, delta_length, parse_word, simple_affine_reflections,
                   subword_ideal)


class GradedFreeModule:
    ''' free graded module over S, stored as its multiset of generator degrees '''

    def __init__(self, degrees=()):
        self.degrees = tuple(sorted(int(d) for d in degrees))

    @property
    def rank(self):
        return len(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __eq__(self, other):
        if isinstance(other, GradedFreeModule):
            return self.degrees == other.degrees
        return NotImplemented

    def __hash__(self):
        return hash(self.degrees)

    def __add__(self, other):
        return GradedFreeModule(self.degrees + other.degrees)

    def shift(self, n):
        ''' L<n>: a generator in degree d moves to degree d-n '''
        return GradedFreeModule(d - n for d in self.degrees)

    def graded_rank(self):
        ''' sum of v^d over the generator degrees d '''
        return LaurentPoly(Counter(self.degrees))

    def dimension(self, degree, nvars):
        return sum(len(monomials(nvars, degree - d)) for d in self.degrees)

    def __str__(self):
        return '{' + ','.join(str(d) for d in self.degrees) + '}'

    def __repr__(self):
        return f'GradedFreeModule({list(self.degrees)})'


def _monomial(R, exponents):
    return R.from_dict({exponents: R.domain.one})


class PolyMatrix:
    ''' matrix of polynomials; column j is the image of a source generator of degree col_degrees[j],
    written on target generators of degrees row_degrees '''

    def __init__(self, R, entries, row_degrees, col_degrees):
        self.R = R
        self.row_degrees = tuple(row_degrees)
        self.col_degrees = tuple(col_degrees)
        self.entries = [[R(e) for e in row] for row in entries]
        if len(self.entries) != len(self.row_degrees) or any(len(row) != len(self.col_degrees) for row in self.entries):
            raise ValueError('matrix entries do not fit the row and column degrees')

    @classmethod
    def zero(cls, R, row_degrees, col_degrees):
        return cls(R, [[R.zero]*len(col_degrees) for _ in row_degrees], row_degrees, col_degrees)

    @classmethod
    def identity(cls, R, degrees):
        n = len(degrees)
        return cls(R, [[R.one if i == j else R.zero for j in range(n)] for i in range(n)], degrees, degrees)

    @property
    def shape(self):
        return len(self.row_degrees), len(self.col_degrees)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other):
        ''' self after other '''
        R = self.R
        entries = [[sum((self.entries[i][k]*other.entries[k][j] for k in range(len(self.col_degrees))), R.zero)
                    for j in range(len(other.col_degrees))] for i in range(len(self.row_degrees))]
        return PolyMatrix(R, entries, self.row_degrees, other.col_degrees)

    def reduce(self, form):
        ''' entries reduced modulo a linear form '''
        return PolyMatrix(self.R, [[e.rem(form) if e else e for e in row] for row in self.entries], self.row_degrees, self.col_degrees)

    def stack(self, other):
        ''' rows of self above rows of other, same source '''
        return PolyMatrix(self.R, self.entries + other.entries, self.row_degrees + other.row_degrees, self.col_degrees)

    def is_homogeneous(self):
        for (i, row) in enumerate(self.entries):
            for (j, e) in enumerate(row):
                for exponents in e.keys():
                    if 2*sum(exponents) != self.col_degrees[j] - self.row_degrees[i]:
                        return False
        return True

    def is_zero(self):
        return not any(e for row in self.entries for e in row)

    def to_strings(self):
        return [[str(e.as_expr()) for e in row] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries and \
            self.row_degrees == other.row_degrees and self.col_degrees == other.col_degrees


def edge_key(x, y):
    return frozenset((x, y))


class MGSheaf:
    ''' sheaf on a moment graph: stalks at vertices and edges with restriction maps

    Args:
        graph (MomentGraph): the underlying graph, ordinary or quotient
        field (ScalarField): coefficients
        stalks (dict): vertex -> generator degrees, missing vertices have zero stalk
        edge_stalks (dict): edge_key -> generator degrees over S/label
        rho (dict): (vertex, edge_key) -> PolyMatrix from the vertex stalk to the edge stalk
    '''

    def __init__(self, graph, field, stalks=None, edge_stalks=None, rho=None, name=None):
        self.graph = graph
        self.field = field
        self.R = field.ring(graph.rd)
        self.name = name or 'sheaf'
        self.stalks = {x: GradedFreeModule((stalks or {}).get(x, ())) for x in graph.vertices}
        self.edge_stalks = {}
        self.rho = {}
        for (x, y, _) in graph.edges:
            key = edge_key(x, y)
            self.edge_stalks[key] = GradedFreeModule((edge_stalks or {}).get(key, ()))
            for end in (x, y):
                matrix = (rho or {}).get((end, key))
                if matrix is None:
                    matrix = PolyMatrix.zero(self.R, self.edge_stalks[key].degrees, self.stalks[end].degrees)
                self.rho[(end, key)] = matrix

    @property
    def rd(self):
        return self.graph.rd

    @property
    def nvars(self):
        return self.graph.rd.rank + 1

    def stalk(self, x):
        return self.stalks[x]

    def edge_stalk(self, x, y):
        return self.edge_stalks[edge_key(x, y)]

    def restriction(self, x, y):
        ''' rho_{x,E} for the edge E between x and y '''
        return self.rho[(x, edge_key(x, y))]

    def label_form(self, x, y):
        return label_form(self.rd, self.field, self.graph.label(x, y))

    def ranks(self):
        return {x: m.rank for (x, m) in self.stalks.items()}

    @property
    def support(self):
        return [x for x in self.graph.vertices if self.stalks[x].rank]

    def max_degree(self, vertices=None):
        degrees = [d for x in (vertices or self.graph.vertices) for d in self.stalks[x].degrees]
        return max(degrees) if degrees else 0

    def shift(self, n):
        ''' F<n> '''
        return MGSheaf(self.graph, self.field,
                       {x: m.shift(n).degrees for (x, m) in self.stalks.items()},
                       {key: m.shift(n).degrees for (key, m) in self.edge_stalks.items()},
                       {key: PolyMatrix(self.R, m.entries, [d-n for d in m.row_degrees], [d-n for d in m.col_degrees])
                        for (key, m) in self.rho.items()},
                       name=f'{self.name}<{n}>')

    def extended(self, graph):
        ''' extension by zero to a larger full subgraph '''
        missing = [x for x in self.graph.vertices if x not in graph]
        if missing:
            raise PyAlcoveException(f'{graph.name} does not contain the vertices of {self.name}')
        return MGSheaf(graph, self.field,
                       {x: m.degrees for (x, m) in self.stalks.items()},
                       {key: m.degrees for (key, m) in self.edge_stalks.items()},
                       self.rho, name=self.name)

    def restricted(self, vertices):
        ''' the sheaf on the full subgraph over some of its vertices '''
        graph = self.graph.subgraph(vertices)
        keys = {edge_key(x, y) for (x, y, _) in graph.edges}
        return MGSheaf(graph, self.field,
                       {x: self.stalks[x].degrees for x in graph.vertices},
                       {key: m.degrees for (key, m) in self.edge_stalks.items() if key in keys},
                       {(x, key): m for ((x, key), m) in self.rho.items() if key in keys and x in graph},
                       name=self.name)

    def to_json(self):
        name = self.graph.vertex_name
        return {
            'type': self.rd.label,
            'field': self.field.name,
            'name': self.name,
            'stalks': {name(x): list(m.degrees) for (x, m) in self.stalks.items()},
            'edges': [{'source': name(x), 'target': name(y), 'label': str(label),
                       'degrees': list(self.edge_stalk(x, y).degrees),
                       'rho_source': self.restriction(x, y).to_strings(),
                       'rho_target': self.restriction(y, x).to_strings()} for (x, y, label) in self.graph.edges],
        }

    def __repr__(self):
        ranks = ', '.join(f'{self.graph.vertex_name(x)}:{m}' for (x, m) in self.stalks.items() if m.rank)
        return f'<MGSheaf {self.name} over {self.field}: {ranks}>'


def sheaf_B_e(g, field):
    ''' rank one in degree 0 at e, zero elsewhere '''
    e = AffineWeylElem.identity(g.rd)
    if e not in g:
        raise PyAlcoveException(f'{g.name} does not contain e')
    return MGSheaf(g, field, {e: (0,)}, name='B_e')


class SectionSpace:
    ''' solutions of the compatibility system over a vertex set, degree by degree up to a cutoff

    ``generators`` holds (degree, section) pairs of minimal homogeneous generators, a section being
    {vertex: [polynomial per stalk generator]}.
    '''

    def __init__(self, sheaf, vertices, cutoff):
        self.sheaf = sheaf
        self.vertices = list(vertices)
        self.cutoff = cutoff
        self.layouts = {}
        self.bases = {}
        self.dimensions = {}
        self.generators = []

    @property
    def module(self):
        return GradedFreeModule(d for (d, _) in self.generators)

    @property
    def degrees(self):
        return self.module.degrees

    def section(self, degree, vector):
        R = self.sheaf.R
        section = {x: [R.zero]*self.sheaf.stalk(x).rank for x in self.vertices}
        for ((x, j, m), c) in zip(self.layouts[degree], vector):
            if c:
                section[x][j] += R.from_dict({m: c})
        return section

    def embedding(self, x):
        ''' PolyMatrix from the free module on the generators into the stalk at x '''
        R = self.sheaf.R
        stalk = self.sheaf.stalk(x)
        entries = [[section[x][j] for (_, section) in self.generators] for j in range(stalk.rank)]
        return PolyMatrix(R, entries, stalk.degrees, [d for (d, _) in self.generators])

    def fits_free(self):
        ''' dimension per degree matches the free module on the generators '''
        module = self.module
        nvars = self.sheaf.nvars
        return all(module.dimension(D, nvars) == n for (D, n) in self.dimensions.items())


def _layout(sheaf, vertices, degree):
    nvars = sheaf.nvars
    return [(x, j, m) for x in vertices for (j, e) in enumerate(sheaf.stalk(x).degrees) for m in monomials(nvars, degree - e)]


def _constraint_rows(sheaf, vertices, edges, degree, layout):
    ''' rows of the degree-D system: rho_x(m_x) - rho_y(m_y) = 0, or rho_x(m_x) = 0 when y is not solved for '''
    R = sheaf.R
    field = sheaf.field
    inside = set(vertices)
    columns = {}
    for (c, (x, j, m)) in enumerate(layout):
        columns.setdefault(x, []).append((c, j, m))
    rows = {}
    for (n, (x, y)) in enumerate(edges):
        key = edge_key(x, y)
        if not sheaf.edge_stalks[key].rank:
            continue
        form = sheaf.label_form(x, y)
        for (end, sign) in ((x, 1), (y, -1)):
            if end not in inside:
                continue
            rho = sheaf.rho[(end, key)]
            for (c, j, m) in columns.get(end, ()):
                mono = _monomial(R, m)
                for i in range(rho.shape[0]):
                    if not rho.entries[i][j]:
                        continue
                    image = (mono*rho.entries[i][j]).rem(form)
                    for (mu, coefficient) in image.items():
                        row = rows.setdefault((n, i, mu), {})
                        row[c] = row.get(c, field.domain.zero) + (coefficient if sign > 0 else -coefficient)
    return [row for row in rows.values() if any(row.values())]


def _shifted_vector(vector, layout, index, k):
    ''' vector of degree D multiplied by the k-th variable, written in the degree D+2 layout '''
    result = {}
    for ((x, j, m), c) in zip(layout, vector):
        if c:
            target = m[:k] + (m[k]+1,) + m[k+1:]
            result[index[(x, j, target)]] = c
    return result


def _new_generators(field, lower, basis, ncols):
    return field.complement(lower, basis, ncols)


def default_cutoff(sheaf, vertices):
    ''' 2 (largest length difference) + 4 above the highest stalk generator '''
    lengths = [(x.element if isinstance(x, WallCoset) else x).length for x in vertices]
    span = max(lengths) - min(lengths) if lengths else 0
    return 2*span + 4 + sheaf.max_degree(vertices)


def graded_kernel(sheaf, vertices, edges, cutoff=None, what='sections', free=False):
    ''' solve the compatibility system degree by degree and extract minimal generators

    Args:
        vertices: vertices whose stalk coordinates are unknowns
        edges: (x, y) pairs; with both ends in vertices the two restrictions must agree, otherwise
            the restriction from the end in vertices must vanish
        cutoff (int): highest degree computed
        free (bool): raise FreeFitFailure when the result is not free on its generators
    '''
    wanted = set(vertices)
    vertices = [x for x in sheaf.graph.vertices if x in wanted]
    if cutoff is None:
        cutoff = default_cutoff(sheaf, vertices)
    space = SectionSpace(sheaf, vertices, cutoff)
    field = sheaf.field
    nvars = sheaf.nvars
    degrees = [d for x in vertices for d in sheaf.stalk(x).degrees]
    if not degrees:
        return space
    previous = {}
    for D in range(min(degrees), cutoff+1):
        layout = _layout(sheaf, vertices, D)
        space.layouts[D] = layout
        rows = _constraint_rows(sheaf, vertices, edges, D, layout)
        basis = field.nullspace(rows, len(layout))
        space.bases[D] = basis
        space.dimensions[D] = len(basis)
        lower = []
        if D-2 in previous:
            index = {col: c for (c, col) in enumerate(layout)}
            for vector in space.bases[D-2]:
                for k in range(nvars):
                    lower.append(_shifted_vector(vector, space.layouts[D-2], index, k))
        for i in _new_generators(field, lower, basis, len(layout)):
            space.generators.append((D, space.section(D, basis[i])))
        previous[D] = True
    late = [d for (d, _) in space.generators if d > cutoff - 4]
    if late:
        raise CutoffInstability(f'{what} of {sheaf.name} still gain generators in degrees {late} near cutoff {cutoff}', cutoff=cutoff, degrees=late)
    if free and not space.fits_free():
        module = space.module
        expected = [module.dimension(D, nvars) for D in sorted(space.dimensions)]
        found = [space.dimensions[D] for D in sorted(space.dimensions)]
        raise FreeFitFailure(f'{what} of {sheaf.name} is not free on generators {module}', expected=expected, found=found)
    return space


def sections(F, vertices=None, cutoff=None, free=False):
    ''' Gamma(vertices, F) '''
    vertices = F.graph.vertices if vertices is None else list(vertices)
    inside = set(vertices)
    edges = [(x, y) for (x, y, _) in F.graph.edges if x in inside and y in inside]
    return graded_kernel(F, vertices, edges, cutoff, what='sections', free=free)


def up_neighbours(F, x, order='bruhat'):
    return [y for (y, _) in F.graph.up_edges(x, order)]


def subquotient(F, x, order='bruhat', cutoff=None):
    ''' {m in F^x : rho_{x,E}(m) = 0 for every edge E to a larger vertex}, as a free module '''
    ups = up_neighbours(F, x, order)
    if cutoff is None:
        cutoff = F.max_degree([x]) + 2*len(ups) + 4
    return graded_kernel(F, [x], [(x, y) for y in ups], cutoff, what=f'subquotient at {F.graph.vertex_name(x)}', free=True).module


def character(F, order='bruhat', lengthfn=None):
    ''' sum of v^l(x) rk(subquotient at x) X_x, on W_x for the Bruhat order and A_x for the generic order '''
    if lengthfn is None:
        lengthfn = (lambda x: x.length) if order == 'bruhat' else delta_length
    terms = {}
    for x in F.support:
        terms[x] = subquotient(F, x, order).graded_rank().shift(lengthfn(x))
    return PeriodicElem(F.rd, terms, basis='W' if order == 'bruhat' else 'A')


def restriction_surjective(F, vertices, cutoff=None):
    ''' global sections restrict onto the sections over a vertex set, degree by degree '''
    vertices = list(vertices)
    if cutoff is None:
        cutoff = default_cutoff(F, F.graph.vertices)
    whole = sections(F, cutoff=cutoff)
    part = sections(F, vertices, cutoff=cutoff)
    field = F.field
    for (D, dimension) in part.dimensions.items():
        if not dimension:
            continue
        index = {col: c for (c, col) in enumerate(part.layouts[D])}
        projected = []
        for vector in whole.bases.get(D, []):
            row = [field.domain.zero]*len(index)
            for (col, c) in zip(whole.layouts[D], vector):
                if col in index:
                    row[index[col]] = c
            projected.append(row)
        if field.rank(projected, len(index)) != dimension:
            return False
    return True


def tson(F, s, cutoff=None):
    ''' sheaf on the quotient graph: G at {x, xs} is Gamma({x, xs}, F), G at an edge is F^E + F^Es '''
    g = F.graph
    if not g.is_s_invariant(s):
        raise PyAlcoveException(f'vertex set of {g.name} is not invariant under s{s}, enlarge the ideal')
    simple = simple_affine_reflections(g.rd)[s]
    q = build_quotient(g, s)
    R = F.R
    stalks, embeddings = {}, {}
    for coset in q.vertices:
        space = sections(F, coset.members, cutoff=cutoff, free=True)
        stalks[coset] = space.degrees
        embeddings[coset] = {x: space.embedding(x) for x in coset.members}
    edge_stalks, rho = {}, {}
    for (a, b, label) in q.edges:
        x = a.element
        y = b.element if g.graph.has_edge(x, b.element) else b.element*simple
        E, Es = (x, y), (x*simple, y*simple)
        key = edge_key(a, b)
        edge_stalks[key] = F.edge_stalk(*E).degrees + F.edge_stalk(*Es).degrees
        form = label_form(g.rd, F.field, label)
        xs, ys = Es
        top = F.restriction(x, y) @ embeddings[a][x]
        bottom = F.restriction(xs, ys) @ embeddings[a][xs]
        rho[(a, key)] = top.stack(bottom).reduce(form)
        top = F.restriction(y, x) @ embeddings[b][y]
        bottom = F.restriction(ys, xs) @ embeddings[b][ys]
        rho[(b, key)] = top.stack(bottom).reduce(form)
    return MGSheaf(q, F.field, stalks, edge_stalks, rho, name=f'on{s}({F.name})')


def tsout(G, s, graph=None, name=None):
    ''' sheaf on the s-invariant graph: F^x = G at the coset of x; the s-edge gets G/alpha G with identity maps '''
    q = G.graph
    rd = q.rd
    simple = simple_affine_reflections(rd)[s]
    if graph is None:
        graph = build_graph(rd, [x for coset in q.vertices for x in coset.members])
    R = G.R
    coset = {x: WallCoset.of(x, s) for x in graph.vertices}
    stalks = {x: G.stalk(coset[x]).degrees for x in graph.vertices}
    edge_stalks, rho = {}, {}
    for (x, y, label) in graph.edges:
        key = edge_key(x, y)
        if y == x*simple:
            degrees = stalks[x]
            edge_stalks[key] = degrees
            rho[(x, key)] = rho[(y, key)] = PolyMatrix.identity(R, degrees)
            continue
        bar = edge_key(coset[x], coset[y])
        if bar not in G.edge_stalks:
            continue
        edge_stalks[key] = G.edge_stalks[bar].degrees
        rho[(x, key)] = G.rho[(coset[x], bar)]
        rho[(y, key)] = G.rho[(coset[y], bar)]
    return MGSheaf(graph, G.field, stalks, edge_stalks, rho, name=name or f'out{s}({G.name})')


def theta_tilde(F, s, cutoff=None):
    ''' tsout after tson '''
    return tsout(tson(F, s, cutoff), s, F.graph, name=f'theta{s}({F.name})')


def bott_samelson_sheaf(rd, word, field, cutoff=None):
    ''' theta along a word applied to B_e; each step runs on the Bruhat ideal of the subword products so far '''
    word = parse_word(rd, word)
    F = sheaf_B_e(build_graph(rd, [AffineWeylElem.identity(rd)]), field)
    for (k, s) in enumerate(word):
        graph = build_graph(rd, subword_ideal(rd, word[:k+1]))
        F = theta_tilde(F.extended(graph), s, cutoff)
    F.name = f'BS({",".join(str(i) for i in word)})'
    return F


def psi_wall(F, x, s, cutoff=None):
    ''' rank of Gamma({x, xs}, F) against rk F^x + rk F^xs '''
    simple = simple_affine_reflections(F.rd)[s]
    module = sections(F, [x, x*simple], cutoff=cutoff).module
    return module.rank, F.stalk(x).rank + F.stalk(x*simple).rank


def stalk_ranks(F):
    return {x: F.stalk(x).rank for x in F.graph.vertices}
