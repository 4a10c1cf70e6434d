'''Laurent polynomials, the affine Hecke algebra, Kazhdan-Lusztig elements and the periodic module.

Hecke elements are kept on the basis T~_x = v^l(x) T_x, where the quadratic
relation reads T~_s T~_s = T~_e + (v^-1 - v) T~_s.
'''
import threading
from fractions import Fraction
from math import factorial

from .weyl import (AffineWeylElem, element, generic_step_up, parse_word, reduced_words,
                   reflection_of_edge, right_descents, simple_affine_reflections, subword_ideal,
                   word_string)


class LaurentPoly:
    ''' integer Laurent polynomial in v, stored as {exponent: coefficient} without zero coefficients

    Example::

        v = LaurentPoly.monomial(1)
        (v + v.bar())*(v - v.bar())    # v^2 - v^-2
    '''

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=None):
        if isinstance(coeffs, LaurentPoly):
            coeffs = coeffs.coeffs
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self.coeffs = {int(e): int(c) for (e, c) in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def of(cls, value):
        return value if isinstance(value, LaurentPoly) else cls(value)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        other = LaurentPoly.of(other)
        coeffs = dict(self.coeffs)
        for (e, c) in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return LaurentPoly(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for (e, c) in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.of(other))

    def __rsub__(self, other):
        return LaurentPoly.of(other) - self

    def __mul__(self, other):
        if not isinstance(other, (LaurentPoly, int)):
            return NotImplemented
        other = LaurentPoly.of(other)
        coeffs = {}
        for (e1, c1) in self.coeffs.items():
            for (e2, c2) in other.coeffs.items():
                coeffs[e1+e2] = coeffs.get(e1+e2, 0) + c1*c2
        return LaurentPoly(coeffs)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = LaurentPoly(1)
        for _ in range(n):
            result = result*self
        return result

    def coefficient(self, exponent):
        return self.coeffs.get(exponent, 0)

    def shift(self, n):
        ''' multiply by v^n '''
        return LaurentPoly({e+n: c for (e, c) in self.coeffs.items()})

    def bar(self):
        ''' v -> v^-1 '''
        return LaurentPoly({-e: c for (e, c) in self.coeffs.items()})

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    @property
    def low_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def evaluate(self, at=1):
        at = Fraction(at)
        value = sum(c*at**e for (e, c) in self.coeffs.items())
        value = Fraction(value)
        return int(value) if value.denominator == 1 else value

    def derivative(self):
        return LaurentPoly({e-1: e*c for (e, c) in self.coeffs.items()})

    def pairs(self):
        ''' [(exponent, coefficient), ...] sorted by exponent '''
        return [[e, self.coeffs[e]] for e in sorted(self.coeffs)]

    @classmethod
    def from_pairs(cls, pairs):
        return cls({e: c for (e, c) in pairs})

    def __str__(self):
        if not self.coeffs:
            return '0'
        text = ''
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            power = '' if e == 0 else 'v' if e == 1 else f'v^{e}'
            magnitude = abs(c)
            term = str(magnitude) if not power else (power if magnitude == 1 else f'{magnitude}{power}')
            if not text:
                text = term if c > 0 else f'-{term}'
            else:
                text += f' + {term}' if c > 0 else f' - {term}'
        return text

    def __repr__(self):
        return f'LaurentPoly({self})'


v = LaurentPoly.monomial(1)
v_inv = LaurentPoly.monomial(-1)


class LinearCombination:
    ''' finitely supported map from affine Weyl group elements to Laurent polynomials '''

    symbol = '?'

    def __init__(self, rd, terms=None):
        self.rd = rd
        self.terms = {}
        for (x, p) in (terms or {}).items():
            p = LaurentPoly.of(p)
            if p:
                self.terms[x] = p

    @classmethod
    def basis(cls, rd, x, coefficient=1, **kwds):
        return cls(rd, {x: coefficient}, **kwds)

    def _like(self, terms):
        return type(self)(self.rd, terms)

    def coefficient(self, x):
        return self.terms.get(x, LaurentPoly())

    @property
    def support(self):
        return set(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return type(other) is type(self) and self.terms == other.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for (x, p) in other.terms.items():
            terms[x] = terms.get(x, LaurentPoly()) + p
        return self._like(terms)

    def __neg__(self):
        return self._like({x: -p for (x, p) in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = LaurentPoly.of(factor)
        return self._like({x: factor*p for (x, p) in self.terms.items()})

    def __rmul__(self, factor):
        if isinstance(factor, (int, LaurentPoly)):
            return self.scale(factor)
        return NotImplemented

    def evaluate(self, at=1):
        return {x: p.evaluate(at) for (x, p) in self.terms.items()}

    def to_json(self):
        ''' {word: [[exponent, coefficient], ...]} '''
        return {word_string(x.word(), self.rd): p.pairs() for (x, p) in sorted(self.terms.items(), key=lambda item: (item[0].length, item[0].word()))}

    @classmethod
    def from_json(cls, rd, data, **kwds):
        return cls(rd, {element(rd, word): LaurentPoly.from_pairs(pairs) for (word, pairs) in data.items()}, **kwds)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for x in sorted(self.terms, key=lambda x: (x.length, x.word())):
            p = self.terms[x]
            parts.append(f'{self.symbol}_{x}' if p == 1 else f'({p}){self.symbol}_{x}')
        return ' + '.join(parts)

    def __repr__(self):
        return f'<{type(self).__name__} {self}>'


class HeckeElem(LinearCombination):
    ''' element of the affine Hecke algebra on the basis T~_x '''

    symbol = 'T~'

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            return hecke_mult(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    @classmethod
    def one(cls, rd):
        return cls.basis(rd, AffineWeylElem.identity(rd))

    def to_standard(self):
        ''' coefficients on the basis T_x '''
        return {x: p.shift(x.length) for (x, p) in self.terms.items()}


class PeriodicElem(LinearCombination):
    ''' element of the periodic module on the alcove basis A_x, or of the Bruhat character module on W_x

    Args:
        basis (str): 'A' for the periodic module, 'W' for the module the Bruhat characters live in
    '''

    def __init__(self, rd, terms=None, basis='A'):
        super().__init__(rd, terms)
        self.symbol = basis

    def _like(self, terms):
        return PeriodicElem(self.rd, terms, basis=self.symbol)

    def __eq__(self, other):
        return isinstance(other, PeriodicElem) and other.symbol == self.symbol and other.terms == self.terms


def standard_to_tilde(rd, coefficients):
    ''' HeckeElem from {x: coefficient of T_x} '''
    return HeckeElem(rd, {x: LaurentPoly.of(p).shift(-x.length) for (x, p) in coefficients.items()})


def tilde_to_standard(h):
    return h.to_standard()


def t_standard(rd, word):
    ''' T_x for the element of a word '''
    x = element(rd, word)
    return HeckeElem.basis(rd, x, v_inv**x.length)


def t_inverse(rd, s):
    ''' T_s^-1 = v^2 T_s + (v^2 - 1) '''
    return standard_to_tilde(rd, {simple_affine_reflections(rd)[s]: v**2, AffineWeylElem.identity(rd): v**2 - 1})


def _times_simple(terms, s):
    ''' right multiplication of a {x: coefficient} map by T~_s '''
    result = {}
    for (x, p) in terms.items():
        xs = x*s
        result[xs] = result.get(xs, LaurentPoly()) + p
        if xs.length < x.length:
            result[x] = result.get(x, LaurentPoly()) + (v_inv - v)*p
    return result


def hecke_mult(a, b):
    ''' product of two Hecke elements, T~_y expanded along a reduced word '''
    simples = simple_affine_reflections(a.rd)
    result = HeckeElem(a.rd)
    for (y, q) in b.terms.items():
        terms = dict(a.terms)
        for i in y.word():
            terms = _times_simple(terms, simples[i])
        result = result + HeckeElem(a.rd, terms).scale(q)
    return result


_dual_cache = {}
_kl_cache = {}
_cache_lock = threading.Lock()


def _dual_basis(x):
    ''' d(T~_x) '''
    try:
        return _dual_cache[x]
    except KeyError:
        pass
    rd = x.rd
    if x.length == 0:
        result = HeckeElem.basis(rd, x)
    else:
        i = right_descents(x)[0]
        s = simple_affine_reflections(rd)[i]
        lower = _dual_basis(x*s)
        result = HeckeElem(rd, _times_simple(lower.terms, s)) + lower.scale(v - v_inv)
    with _cache_lock:
        _dual_cache[x] = result
    return result


def duality(a):
    ''' the ring involution with d(v) = v^-1 and d(T_x) = T_{x^-1}^-1 '''
    result = HeckeElem(a.rd)
    for (x, p) in a.terms.items():
        result = result + _dual_basis(x).scale(p.bar())
    return result


def kl_simple(rd, s):
    ''' H_s = T~_s + v '''
    return HeckeElem(rd, {simple_affine_reflections(rd)[s]: 1, AffineWeylElem.identity(rd): v})


def kl_element(x):
    ''' self-dual Kazhdan-Lusztig element of x, built by the mu-correction recursion and cached '''
    try:
        return _kl_cache[x]
    except KeyError:
        pass
    rd = x.rd
    if x.length == 0:
        result = HeckeElem.basis(rd, x)
    else:
        i = right_descents(x)[0]
        s = simple_affine_reflections(rd)[i]
        lower = kl_element(x*s)
        result = lower*kl_simple(rd, i)
        for (y, p) in lower.terms.items():
            mu = p.coefficient(1)
            if mu and y != x*s and (y*s).length < y.length:
                result = result - kl_element(y).scale(mu)
    with _cache_lock:
        _kl_cache[x] = result
    return result


def kl_cache_size():
    return len(_kl_cache)


def kl_poly(y, x):
    ''' h_{y,x}, the coefficient of T~_y in the Kazhdan-Lusztig element of x '''
    return kl_element(x).coefficient(y)


def kl_mu(y, x):
    return kl_poly(y, x).coefficient(1)


def multiplicity_prediction(x, y):
    ''' h_{x,y}(1) '''
    return kl_poly(x, y).evaluate(1)


def kl_properties(h, x):
    ''' failed properties of a candidate Kazhdan-Lusztig element of x, empty when it is the one '''
    failed = []
    if duality(h) != h:
        failed.append('self-dual')
    if h.coefficient(x) != 1:
        failed.append('unitriangular')
    for (y, p) in h.terms.items():
        if y != x and (p.low_degree is None or p.low_degree < 1):
            failed.append(f'h_{y} not in vZ[v]')
    return failed


def bott_samelson(rd, word):
    ''' H_{s1}...H_{sl} '''
    result = HeckeElem.one(rd)
    for i in parse_word(rd, word):
        result = result*kl_simple(rd, i)
    return result


def _as_module(m, rd, basis):
    if isinstance(m, AffineWeylElem):
        return PeriodicElem(rd, {m: 1}, basis=basis)
    return m


def rho_action(m, s, order='bruhat'):
    ''' rho_{s,order}: W_x -> W_xs + v^-1 W_x when xs lies below x, W_xs + v W_x otherwise

    Args:
        m: PeriodicElem, or an element taken as its basis vector
        s (int): simple reflection index
        order (str): bruhat or generic
    '''
    if order not in ('bruhat', 'generic'):
        raise ValueError(f'order must be bruhat or generic, not {order!r}')
    rd = m.rd
    m = _as_module(m, rd, 'W' if order == 'bruhat' else 'A')
    simple = simple_affine_reflections(rd)[s]
    terms = {}
    for (x, p) in m.terms.items():
        xs = x*simple
        if order == 'bruhat':
            down = xs.length < x.length
        else:
            down = not generic_step_up(x, s)
        terms[xs] = terms.get(xs, LaurentPoly()) + p
        terms[x] = terms.get(x, LaurentPoly()) + (v_inv if down else v)*p
    return PeriodicElem(rd, terms, basis=m.symbol)


def periodic_act(m, h):
    ''' right action of the Hecke algebra on the periodic module: T~_s acts as rho_{s,generic} - v '''
    rd = h.rd
    m = _as_module(m, rd, 'A')
    result = PeriodicElem(rd, basis='A')
    for (y, q) in h.terms.items():
        part = m
        for i in y.word():
            part = rho_action(part, i, 'generic') - part.scale(v)
        result = result + part.scale(q)
    return result


def to_hecke(m):
    ''' W_x -> T~_x, under which rho_{s,bruhat} is right multiplication by H_s '''
    return HeckeElem(m.rd, m.terms)


def bound_components(rd, word):
    ''' (r, d, N, l) of a word: coefficients a_x of its Bott-Samelson element give r = max a_x(1) and d = max a_x'(1);
    N is the largest height of a label on the subgraph below the subword products '''
    word = parse_word(rd, word)
    if not word:
        return 1, 0, 1, 0
    coefficients = bott_samelson(rd, word).terms.values()
    r = max(p.evaluate(1) for p in coefficients)
    d = max(p.derivative().evaluate(1) for p in coefficients)
    vertices = sorted(subword_ideal(rd, word), key=lambda x: (x.length, x.word()))
    heights = [1]
    for (i, x) in enumerate(vertices):
        for y in vertices[i+1:]:
            label = reflection_of_edge(x, y)
            if label is not None:
                heights.append(label.height(rd))
    return r, d, max(heights), len(word)


def bound_U(rd, word):
    ''' U = r!(r!(r-1)! N^(l+2d))^r, 1 for the empty word '''
    r, d, N, l = bound_components(rd, word)
    if l == 0:
        return 1
    return factorial(r)*(factorial(r)*factorial(r-1)*N**(l+2*d))**r


def bound_U_min(w):
    ''' smallest U over the reduced words of w '''
    return min(bound_U(w.rd, word) for word in reduced_words(w))
