'''The combinatorial category of alcove-indexed module data and its translation functors.

An object assigns to each facet F of one orbit (alcoves, or the walls of one type s)
a free module M(F) over S^0 = S[alpha^-1 | alpha in R+], and to each pair (F, beta)
an S^beta-submodule M(F, beta) of M(F) + M(beta_up F), given by generators.
Only finitely many facets carry data; everything else is zero.

Polynomials live in the finite part of the coefficient ring: delta never appears,
which is where moment-graph stalks over S-hat are compared after delta -> 0.
'''
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations, combinations_with_replacement, islice, product

from sympy.polys.matrices import DomainMatrix

from .exceptions import DivisionFailure, PyAlcoveException
from .gsheaf import GradedFreeModule, bott_samelson_sheaf
from .scalars import ScalarField
from .weyl import (AffineWeylElem, Alcove, WallCoset, beta_down, beta_up, parse_word, separating_hyperplanes,
                   wall_minus, wall_of, wall_plus, word_string)


def root_form(rd, field, alpha):
    ''' a finite root as a linear form in a1..ar '''
    return field.linear_form(rd, list(alpha) + [0])


def _total_degree(p):
    return max((sum(m) for m in p.keys()), default=0)


class LocalRingElem:
    ''' num / prod(alpha^e) with alpha running over positive roots

    Args:
        num: polynomial in the ring of the field
        den (Counter): positive root -> exponent
    '''

    def __init__(self, rd, field, num, den=None):
        self.rd = rd
        self.field = field
        self.num = num
        self.den = Counter({tuple(alpha): e for (alpha, e) in (den or {}).items() if e})
        if not num:
            self.den = Counter()

    @classmethod
    def constant(cls, rd, field, c=1):
        R = field.ring(rd)
        return cls(rd, field, R(field.scalar(c)))

    @classmethod
    def root(cls, rd, field, alpha):
        ''' a root of either sign '''
        return cls(rd, field, root_form(rd, field, alpha))

    @classmethod
    def root_inverse(cls, rd, field, alpha):
        positive, sign = rd.positive_part(alpha)
        return cls(rd, field, field.ring(rd)(field.scalar(sign)), {positive: 1})

    @property
    def ring(self):
        return self.field.ring(self.rd)

    def den_poly(self, exponents=None):
        p = self.ring.one
        for (alpha, e) in (exponents or self.den).items():
            p *= root_form(self.rd, self.field, alpha)**e
        return p

    def over(self, den):
        ''' numerator when written over a larger root product den '''
        extra = Counter(den)
        extra.subtract(self.den)
        if any(e < 0 for e in extra.values()):
            raise ValueError(f'{dict(den)} is not a multiple of the denominator of {self}')
        return self.num*self.den_poly(+extra)

    def _coerce(self, other):
        if isinstance(other, LocalRingElem):
            return other
        return LocalRingElem.constant(self.rd, self.field, other)

    def __bool__(self):
        return bool(self.num)

    def __mul__(self, other):
        other = self._coerce(other)
        return LocalRingElem(self.rd, self.field, self.num*other.num, self.den + other.den)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        den = self.den | other.den
        return LocalRingElem(self.rd, self.field, self.over(den) + other.over(den), den)

    __radd__ = __add__

    def __neg__(self):
        return LocalRingElem(self.rd, self.field, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __eq__(self, other):
        if isinstance(other, (int, LocalRingElem)):
            other = self._coerce(other)
            return self.num*other.den_poly() == other.num*self.den_poly()
        return NotImplemented

    __hash__ = None

    def inverse(self):
        ''' inverse of a unit of S^0, that is a nonzero constant times a product of roots '''
        num = self.num
        if not num:
            raise DivisionFailure('zero has no inverse')
        factors = Counter()
        for alpha in self.rd.positive_roots:
            form = root_form(self.rd, self.field, alpha)
            while _total_degree(num) > 0 and not num.rem(form):
                num = num.exquo(form)
                factors[alpha] += 1
        if _total_degree(num) > 0:
            raise DivisionFailure(f'{self} is not a unit after inverting the positive roots')
        c = num.LC
        R = self.ring
        return LocalRingElem(self.rd, self.field, self.den_poly()*R(self.field.domain.one/c), factors)

    def in_ring(self, beta=None):
        ''' membership in S^beta, or in S^0 when beta is None '''
        if beta is None:
            return True
        beta = tuple(beta)
        e = self.den.get(beta, 0)
        if not e:
            return True
        form = root_form(self.rd, self.field, beta)
        num = self.num
        for _ in range(e):
            if num.rem(form):
                return False
            num = num.exquo(form)
        return True

    def __str__(self):
        if not self.den:
            return str(self.num.as_expr())
        den = '*'.join(f'({root_form(self.rd, self.field, a).as_expr()})' + (f'^{e}' if e > 1 else '') for (a, e) in sorted(self.den.items()))
        return f'({self.num.as_expr()})/{den}'

    def __repr__(self):
        return f'LocalRingElem({self})'


def facet_name(facet):
    w = facet.element
    name = word_string(w.word(), w.rd) or 'e'
    return name if isinstance(facet, Alcove) else f'{name}|{facet.s}'


@dataclass
class Presentation:
    ''' generators of M(F, beta) inside M(F) + M(beta_up F); with split False the ambient is M(F) alone '''
    beta: tuple
    dims: tuple
    split: bool = True
    gens: list = dataclass_field(default_factory=list)

    @property
    def width(self):
        return self.dims[0] + self.dims[1]

    @property
    def vectors(self):
        return [v for (_, v) in self.gens]

    def scaled(self, first, second=1):
        ''' (first, second).M: the two blocks multiplied by the given elements '''
        n1 = self.dims[0]
        gens = [(d, tuple(c*first if i < n1 else c*second for (i, c) in enumerate(v))) for (d, v) in self.gens]
        return Presentation(self.beta, self.dims, self.split, gens)

    def __len__(self):
        return len(self.gens)


class AJSObject:
    ''' object over the alcoves (s None) or over the walls of type s

    Args:
        modules (dict): facet -> generator degrees of M(F), zero facets omitted
        presentations (dict): (facet, beta) -> Presentation
    '''

    def __init__(self, rd, field, modules=None, presentations=None, s=None, name=None):
        self.rd = rd
        self.field = field
        self.s = s
        self.name = name or 'M'
        self.modules = {F: GradedFreeModule(d) for (F, d) in (modules or {}).items() if len(d)}
        self.presentations = dict(presentations or {})

    @property
    def orbit(self):
        return 'A' if self.s is None else f'A^{self.s}'

    @property
    def support(self):
        return sorted(self.modules, key=lambda F: (F.element.length, F.element.word()))

    def rank(self, facet):
        m = self.modules.get(facet)
        return m.rank if m else 0

    def degrees(self, facet):
        m = self.modules.get(facet)
        return m.degrees if m else ()

    def facets_with_data(self, beta):
        ''' facets F where M(F) + M(beta_up F) is nonzero '''
        found = set(self.modules)
        found.update(beta_down(F, beta) for F in self.modules)
        return sorted(found, key=lambda F: (F.element.length, F.element.word()))

    def presentation(self, facet, beta):
        beta = tuple(beta)
        pres = self.presentations.get((facet, beta))
        if pres is not None:
            return pres
        up = beta_up(facet, beta)
        if up == facet:
            return Presentation(beta, (self.rank(facet), 0), split=False)
        return Presentation(beta, (self.rank(facet), self.rank(up)))

    def rank_vector(self):
        ''' facet -> graded rank of M(F) '''
        return {F: self.modules[F].graded_rank() for F in self.support}

    def ranks(self):
        return {F: self.modules[F].rank for F in self.support}

    def to_json(self):
        return {
            'type': self.rd.label,
            'orbit': self.orbit,
            'name': self.name,
            'ranks': {facet_name(F): self.modules[F].rank for F in self.support},
            'degrees': {facet_name(F): list(self.modules[F].degrees) for F in self.support},
        }

    def __repr__(self):
        ranks = ', '.join(f'{facet_name(F)}:{m.rank}' for (F, m) in self.modules.items())
        return f'<AJSObject {self.name} on {self.orbit}: {ranks}>'


def _zero(rd, field):
    return LocalRingElem(rd, field, field.ring(rd).zero)


def _one(rd, field):
    return LocalRingElem.constant(rd, field, 1)


def p0(rd, field=None):
    ''' S^0 at A_e; S^beta inside M(A_e) + 0 and inside 0 + M(A_e) at beta_down(A_e) '''
    field = field or ScalarField()
    e = Alcove(AffineWeylElem.identity(rd))
    one = _one(rd, field)
    presentations = {}
    for beta in rd.positive_roots:
        presentations[(e, beta)] = Presentation(beta, (1, 0), True, [(0, (one,))])
        presentations[(beta_down(e, beta), beta)] = Presentation(beta, (0, 1), True, [(0, (one,))])
    return AJSObject(rd, field, {e: (0,)}, presentations, name='P0')



def _embed(rd, field, width, parts):
    vector = [_zero(rd, field)]*width
    for (offset, entries) in parts:
        for (i, c) in enumerate(entries):
            vector[offset+i] = c
    return tuple(vector)


def a_const(A, beta, s, field=None):
    ''' -alpha, alpha^-1 or 1 for the wall of A of type s, by the sign of s_beta(alpha) and the side of A '''
    rd = A.rd
    B = wall_of(A, s)
    alpha, _ = B.hyperplane()
    field = field or ScalarField()
    if rd.is_positive(rd.reflect(alpha, beta)):
        return _one(rd, field)
    if A == wall_plus(B):
        return -LocalRingElem.root(rd, field, alpha)
    return LocalRingElem.root_inverse(rd, field, alpha)




def d_const(F, beta, field=None):
    ''' product of alpha^-1 over H(A, beta_up A) with s_beta(alpha) negative; walls through B- '''
    rd = F.rd
    field = field or ScalarField()
    beta = tuple(beta)
    if isinstance(F, WallCoset):
        alpha, _ = F.hyperplane()
        below = d_const(wall_minus(F), beta, field)
        if rd.is_positive(rd.reflect(alpha, beta)):
            return below
        return LocalRingElem.root(rd, field, alpha)*below
    up = beta_up(F, beta)
    den = Counter()
    for (alpha, _) in separating_hyperplanes(F.element, up.element):
        if not rd.is_positive(rd.reflect(alpha, beta)):
            den[tuple(alpha)] += 1
    return LocalRingElem(rd, field, field.ring(rd).one, den)


def gamma_constants(F, beta, field=None):
    ''' (gamma-, gamma+) for split pairs, (gamma,) when beta_up F is F '''
    rd = F.rd
    field = field or ScalarField()
    if beta_up(F, beta) == F:
        return (_one(rd, field),)
    return (d_const(F, beta, field), _one(rd, field))


def gamma_action(M, inverse=False):
    ''' the object with every M(F, beta) multiplied by its gamma constants (or their inverses) '''
    presentations = {}
    for ((F, beta), pres) in M.presentations.items():
        constants = gamma_constants(F, beta, M.field)
        if inverse:
            constants = tuple(c.inverse() for c in constants)
        presentations[(F, beta)] = pres.scaled(*constants) if pres.split else pres.scaled(constants[0], constants[0])
    return AJSObject(M.rd, M.field, {F: m.degrees for (F, m) in M.modules.items()}, presentations, M.s,
                     name=f'{"gamma^-1" if inverse else "gamma"}({M.name})')


def _wall_objects(M, s, scale=None):
    ''' T_on with an optional scaling of each M(F, beta) by (scale(F, beta), 1) '''
    if M.s is not None:
        raise PyAlcoveException(f'{M.name} lives on walls, translation onto the wall needs alcove data')
    rd, field = M.rd, M.field
    walls = {wall_of(A, s) for A in M.modules}
    modules = {}
    for B in walls:
        modules[B] = M.degrees(wall_minus(B)) + M.degrees(wall_plus(B))
    N = AJSObject(rd, field, modules, s=s)
    presentations = {}
    for beta in rd.positive_roots:
        for B in N.facets_with_data(beta):
            minus, plus = wall_minus(B), wall_plus(B)
            nm, np_ = M.rank(minus), M.rank(plus)
            up = beta_up(B, beta)
            sources = [minus] if up == B else [minus, plus]
            gens = []
            if up == B:
                pres = Presentation(beta, (nm+np_, 0), split=False)
                if beta_up(minus, beta) != plus:
                    raise PyAlcoveException(f'beta_up of {facet_name(minus)} is not the other side of {facet_name(B)}')
                offsets = {minus: 0, plus: nm}
            else:
                um, up_ = M.rank(wall_minus(up)), M.rank(wall_plus(up))
                pres = Presentation(beta, (nm+np_, um+up_))
                offsets = {minus: 0, plus: nm, wall_minus(up): nm+np_, wall_plus(up): nm+np_+um}
            for F in sources:
                target = beta_up(F, beta)
                if target not in offsets or (up != B and target not in (wall_minus(up), wall_plus(up))):
                    raise PyAlcoveException(f'beta_up of {facet_name(F)} leaves the walls {facet_name(B)}, {facet_name(up)}')
                source = M.presentation(F, beta)
                if scale is not None:
                    source = source.scaled(scale(F, beta))
                n1 = source.dims[0]
                for (d, v) in source.gens:
                    gens.append((d, _embed(rd, field, pres.width, [(offsets[F], v[:n1]), (offsets[target], v[n1:])])))
            pres.gens = gens
            presentations[(B, tuple(beta))] = pres
    N.presentations = presentations
    return N


def t_on(M, s):
    ''' N(B) = M(B-) + M(B+); N(B, beta) = M(B-, beta), or M(B-, beta) + M(B+, beta) when beta_up B is not B '''
    N = _wall_objects(M, s)
    N.name = f'on{s}({M.name})'
    return N


def t_on_prime(M, s):
    ''' as t_on, with M(F, beta) first multiplied by ((a_F^beta)^-1, 1) '''
    N = _wall_objects(M, s, scale=lambda F, beta: a_const(F, beta, s, M.field).inverse())
    N.name = f"on'{s}({M.name})"
    return N


def _alcove_objects(N, primed=False):
    s = N.s
    if s is None:
        raise PyAlcoveException(f'{N.name} lives on alcoves, translation out of the wall needs wall data')
    rd, field = N.rd, N.field
    modules = {}
    for B in N.modules:
        modules[wall_minus(B)] = modules[wall_plus(B)] = N.degrees(B)
    M = AJSObject(rd, field, modules)
    presentations = {}
    for beta in rd.positive_roots:
        b = LocalRingElem.root(rd, field, beta)
        for A in M.facets_with_data(beta):
            B = wall_of(A, s)
            up = beta_up(A, beta)
            upbar = wall_of(up, s)
            pres = Presentation(beta, (N.rank(B), N.rank(upbar)))
            source = N.presentation(B, beta)
            n = pres.dims[0]
            gens = []
            if beta_up(B, beta) == B and A == wall_minus(B):
                a = a_const(A, beta, s, field) if primed else None
                for (d, g) in source.gens:
                    if primed:
                        gens.append((d, _embed(rd, field, pres.width, [(0, g)])))
                        gens.append((d, _embed(rd, field, pres.width, [(0, tuple(c*a for c in g)), (n, g)])))
                    else:
                        gens.append((d+2, _embed(rd, field, pres.width, [(0, tuple(c*b for c in g))])))
                        gens.append((d, _embed(rd, field, pres.width, [(0, g), (n, g)])))
            elif beta_up(B, beta) == B:
                for (d, g) in source.gens:
                    if primed:
                        gens.append((d, _embed(rd, field, pres.width, [(0, g)])))
                    else:
                        gens.append((d+2, _embed(rd, field, pres.width, [(0, tuple(c*b for c in g))])))
                for (d, g) in N.presentation(upbar, beta).gens:
                    gens.append((d, _embed(rd, field, pres.width, [(n, g)])))
            else:
                if beta_up(B, beta) != upbar:
                    raise PyAlcoveException(f'the wall of beta_up {facet_name(A)} is not beta_up of {facet_name(B)}')
                if primed:
                    source = source.scaled(a_const(A, beta, s, field))
                gens = [(d, tuple(g)) for (d, g) in source.gens]
            pres.gens = gens
            presentations[(A, tuple(beta))] = pres
    M.presentations = presentations
    return M


def _check_wall_type(N, s):
    if s is not None and s != N.s:
        raise PyAlcoveException(f'{N.name} lives on the walls of type {N.s}, not {s}')


def t_out(N, s=None):
    ''' M(A) = N(A-bar) with the three-case rule for M(A, beta) '''
    _check_wall_type(N, s)
    M = _alcove_objects(N)
    M.name = f'out{N.s}({N.name})'
    return M


def t_out_prime(N, s=None):
    ''' the variant with (x + a y, y), the plain sum, and (a, 1)N in the three cases '''
    _check_wall_type(N, s)
    M = _alcove_objects(N, primed=True)
    M.name = f"out'{N.s}({N.name})"
    return M


def t_on_twisted(M, s):
    ''' gamma^-1 after t_on_prime after gamma '''
    return gamma_action(t_on_prime(gamma_action(M), s), inverse=True)


def t_out_twisted(N, s=None):
    return gamma_action(t_out_prime(gamma_action(N), s), inverse=True)


def translate(M, s):
    ''' T^s = t_out after t_on '''
    return t_out(t_on(M, s), s)


def ajs_track(rd, word, field=None):
    ''' T along the word applied to P0, letters taken left to right like the Bott-Samelson sheaf '''
    M = p0(rd, field)
    word = parse_word(rd, word) if isinstance(word, str) else tuple(word)
    for s in word:
        M = translate(M, s)
    M.name = f'T({",".join(str(i) for i in word)})P0'
    return M


def sheaf_rank_vector(F):
    ''' stalk ranks of a moment-graph sheaf keyed by the alcove of each vertex, zero stalks left out '''
    return {Alcove(x): m.rank for (x, m) in F.stalks.items() if m.rank}


def track_matches(rd, word, field=None, cutoff=None):
    ''' ranks of the AJS track and of the Bott-Samelson sheaf of a word, and whether they agree '''
    field = field or ScalarField()
    track = ajs_track(rd, word, field).ranks()
    sheaf = sheaf_rank_vector(bott_samelson_sheaf(rd, word, field, cutoff))
    return track, sheaf, track == sheaf


# submodule comparison over S^beta

def _common_den(vectors):
    den = Counter()
    for v in vectors:
        for c in v:
            den |= c.den
    return den


def _poly_vectors(vectors, den):
    return [[c.over(den) for c in v] for v in vectors]


def _fraction_rank(R, rows, ncols):
    if not rows or not ncols:
        return 0
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), R.to_domain()).to_field().rank()


def _det(R, rows):
    return DomainMatrix([list(r) for r in rows], (len(rows), len(rows)), R.to_domain()).det()


def _divides_power(rd, field, den, num, beta):
    ''' num/den lies in S^beta: some power of the product of the other positive roots times num is divisible by den '''
    R = field.ring(rd)
    other = R.one
    for alpha in rd.positive_roots:
        if tuple(alpha) != tuple(beta):
            other *= root_form(rd, field, alpha)
    scaled = num
    for _ in range(_total_degree(den)+1):
        if not scaled.rem(den):
            return True
        scaled *= other
    return False


def _monomials_upto(nvars, degree, width):
    found = []
    for d in range(degree+1):
        for combo in combinations_with_replacement(range(nvars), d):
            exponents = [0]*width
            for i in combo:
                exponents[i] += 1
            found.append(tuple(exponents))
    return found


def _search_member(rd, field, x, Y, beta, cap):
    ''' sum f_i Y_i = D^e x with polynomials f_i, for e up to cap '''
    R = field.ring(rd)
    width = rd.rank + 1
    other = R.one
    for alpha in rd.positive_roots:
        if tuple(alpha) != tuple(beta):
            other *= root_form(rd, field, alpha)
    for e in range(cap+1):
        target = [c*other**e for c in x]
        bound = max([_total_degree(c) for c in target] or [0])
        basis = _monomials_upto(rd.rank, bound, width)
        products = {}
        for (i, y) in enumerate(Y):
            for m in basis:
                mono = R.from_dict({m: field.domain.one})
                products[(i, m)] = [c*mono for c in y]
        columns = list(products)
        keys = sorted({(j, mu) for (i, m) in columns for (j, c) in enumerate(products[(i, m)]) for mu in c.keys()} |
                      {(j, mu) for (j, c) in enumerate(target) for mu in c.keys()})
        index = {k: r for (r, k) in enumerate(keys)}
        zero = field.domain.zero
        rows = [[zero]*len(columns) for _ in keys]
        rhs = [zero]*len(keys)
        for (col, key) in enumerate(columns):
            for (j, c) in enumerate(products[key]):
                for (mu, coefficient) in c.items():
                    rows[index[(j, mu)]][col] += coefficient
        for (j, c) in enumerate(target):
            for (mu, coefficient) in c.items():
                rhs[index[(j, mu)]] += coefficient
        if field.solve(rows, rhs, len(columns)) is not None:
            return True
    return None


def is_member(x, Y, beta, cap=3):
    ''' x in the S^beta-span of Y: True, False, or None when undecided within the cap

    With Y independent over the fraction field the coefficients are unique and found by Cramer's rule,
    so the answer is exact. Otherwise coefficients with denominators up to the cap are searched.
    '''
    if not any(x):
        return True
    if not Y:
        return False
    first = x[0]
    rd, field = first.rd, first.field
    R = field.ring(rd)
    den = _common_den(list(Y) + [x])
    Yp = _poly_vectors(Y, den)
    xp = _poly_vectors([x], den)[0]
    width = len(xp)
    columns = [list(col) for col in zip(*Yp)]
    m = len(Yp)
    rank = _fraction_rank(R, Yp, width)
    if _fraction_rank(R, Yp + [xp], width) > rank:
        return False
    if rank < m:
        return _search_member(rd, field, xp, Yp, beta, cap)
    for rows in combinations(range(width), m):
        square = [columns[r] for r in rows]
        det = _det(R, square)
        if det:
            break
    for i in range(m):
        replaced = [[xp[r] if j == i else columns[r][j] for j in range(m)] for r in rows]
        num = _det(R, replaced)
        if num and not _divides_power(rd, field, det, num, beta):
            return False
    return True


def submodule_equal(X, Y, cap=3):
    ''' equal, unequal or inconclusive for two presentations in the same ambient '''
    if X.dims != Y.dims:
        raise ValueError(f'presentations live in different ambients {X.dims} and {Y.dims}')
    if [v for v in X.vectors] == [v for v in Y.vectors]:
        return 'equal'
    verdicts = [is_member(v, Y.vectors, X.beta, cap) for v in X.vectors]
    verdicts += [is_member(v, X.vectors, X.beta, cap) for v in Y.vectors]
    if any(v is False for v in verdicts):
        return 'unequal'
    if any(v is None for v in verdicts):
        return 'inconclusive'
    return 'equal'


def objects_equal(M, N, cap=3):
    ''' same ranks everywhere and equal submodules for every (F, beta) with data '''
    if M.ranks() != N.ranks():
        return 'unequal'
    verdicts = set()
    for beta in M.rd.positive_roots:
        for F in M.facets_with_data(beta):
            verdicts.add(submodule_equal(M.presentation(F, beta), N.presentation(F, beta), cap))
    if 'unequal' in verdicts:
        return 'unequal'
    return 'inconclusive' if 'inconclusive' in verdicts else 'equal'


# model presentations and normal forms

def model_presentations(beta, dims, pattern, split=True):
    ''' presentation of a direct sum of V, Vup and P pieces

    Args:
        pattern: list of (tag, u, w): V uses u in the first block, Vup uses w in the second, P uses both
            and contributes (beta u, 0) and (u, w)
    '''
    gens = []
    n1 = dims[0]
    for (tag, u, w) in pattern:
        if tag == 'V':
            gens.append((0, tuple(u) + _zeros_like(u, dims[1])))
        elif tag == 'Vup':
            gens.append((0, _zeros_like(w, n1) + tuple(w)))
        elif tag == 'P':
            b = LocalRingElem.root(u[0].rd, u[0].field, beta)
            gens.append((2, tuple(c*b for c in u) + _zeros_like(u, dims[1])))
            gens.append((0, tuple(u) + tuple(w)))
        else:
            raise ValueError(f'unknown model {tag!r}, use V, Vup or P')
    return Presentation(tuple(beta), tuple(dims), split, gens)


def _zeros_like(vector, n):
    c = vector[0]
    return tuple(_zero(c.rd, c.field) for _ in range(n))


def _independent(vectors, n):
    if not vectors:
        return n == 0
    den = _common_den(vectors)
    R = vectors[0][0].ring
    return len(vectors) == n and _fraction_rank(R, _poly_vectors(vectors, den), n) == n


def normal_form_search(pres, limit=200, cap=3):
    ''' every decomposition of a presentation into V, Vup and P pieces built from its own generators

    Returns:
        list of patterns, each a list of (tag, u, w); empty when the bounded search finds none
    '''
    beta = pres.beta
    n1, n2 = pres.dims
    vectors = pres.vectors
    found = []
    if not vectors:
        return [[]] if pres.width == 0 else []
    if not pres.split:
        tries = islice(combinations(vectors, n1), limit)
        for combo in tries:
            if _independent(list(combo), n1):
                pattern = [('V', v, ()) for v in combo]
                if submodule_equal(model_presentations(beta, pres.dims, pattern, split=False), pres, cap) == 'equal':
                    found.append(pattern)
        return found
    b = LocalRingElem.root(vectors[0][0].rd, vectors[0][0].field, beta)
    v_cands = [v[:n1] for v in vectors if not any(v[n1:]) and any(v[:n1])]
    up_cands = [v[n1:] for v in vectors if not any(v[:n1]) and any(v[n1:])]
    p_cands = [(v[:n1], v[n1:]) for v in vectors if any(v[:n1]) and any(v[n1:])
               and is_member(tuple(c*b for c in v[:n1]) + _zeros_like(v, n2), vectors, beta, cap)]
    tries = 0
    for c in range(min(n1, n2)+1):
        for (ps, vs, us) in product(combinations(p_cands, c), combinations(v_cands, n1-c), combinations(up_cands, n2-c)):
            tries += 1
            if tries > limit:
                return found
            if not _independent([u for (u, _) in ps] + list(vs), n1) or not _independent([w for (_, w) in ps] + list(us), n2):
                continue
            pattern = [('P', u, w) for (u, w) in ps] + [('V', v, ()) for v in vs] + [('Vup', (), w) for w in us]
            if submodule_equal(model_presentations(beta, pres.dims, pattern), pres, cap) == 'equal':
                found.append(pattern)
    return found


def pattern_tags(pattern):
    return sorted(tag for (tag, _, _) in pattern)
