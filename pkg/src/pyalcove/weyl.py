'''The affine Weyl group, its Bruhat and generic orders, alcoves and walls.

An element t_mu.w acts on V* as v -> A v + mu, where V* is written in the
coordinates v_i = <alpha_i, v>. The alcove A_w is w applied to the fundamental
alcove A_e, whose centre has all coordinates 1/h.
'''
import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from .rootsys import AffineRoot, AffineWeight, normalize_label
from .utils import readableList


_inverse_cache = {}
_inverse_lock = threading.Lock()


def _finite_inverse(matrix):
    ''' inverse of a finite Weyl group matrix, cached on the matrix '''
    try:
        return _inverse_cache[matrix]
    except KeyError:
        pass
    inverse = sympy.Matrix(matrix).inv()
    result = tuple(tuple(int(inverse[i, j]) for j in range(inverse.cols)) for i in range(inverse.rows))
    with _inverse_lock:
        _inverse_cache[matrix] = result
    return result


class AffineWeylElem:
    ''' element t_mu.w of the affine Weyl group, hashed on (matrix, shift) '''

    def __init__(self, rd, matrix, shift):
        self.rd = rd
        self.matrix = tuple(tuple(int(a) for a in row) for row in matrix)
        self.shift = tuple(int(m) for m in shift)
        self._hash = hash((rd.label, self.matrix, self.shift))
        self._floors = None
        self._word = None

    @classmethod
    def identity(cls, rd):
        return cls(rd, np.eye(rd.rank, dtype=int), [0]*rd.rank)

    @classmethod
    def reflection(cls, rd, alpha, n=0):
        ''' s_{alpha,n}: v -> v - (<alpha,v> - n) alpha^vee '''
        a = np.array(rd.coroot_vector(alpha))
        matrix = np.eye(rd.rank, dtype=int) - np.outer(a, np.array(alpha))
        return cls(rd, matrix, n*a)

    @classmethod
    def translation(cls, rd, mu):
        ''' t_mu, mu given by its values <alpha_i, mu> '''
        return cls(rd, np.eye(rd.rank, dtype=int), mu)

    def __eq__(self, other):
        return isinstance(other, AffineWeylElem) and self._hash == other._hash and self.matrix == other.matrix and self.shift == other.shift

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        A = np.array(self.matrix)
        return AffineWeylElem(self.rd, A @ np.array(other.matrix), A @ np.array(other.shift) + np.array(self.shift))

    def inverse(self):
        inverse = np.array(_finite_inverse(self.matrix))
        return AffineWeylElem(self.rd, inverse, -(inverse @ np.array(self.shift)))

    @property
    def finite_part(self):
        return AffineWeylElem(self.rd, self.matrix, [0]*self.rd.rank)

    @property
    def is_identity(self):
        return self == AffineWeylElem.identity(self.rd)

    def scaled_centre(self):
        ''' h times the centre of the alcove A_w '''
        rd = self.rd
        return np.array(self.matrix) @ np.ones(rd.rank, dtype=int) + rd.coxeter_number*np.array(self.shift)

    def centre(self):
        h = self.rd.coxeter_number
        return tuple(Fraction(int(p), h) for p in self.scaled_centre())

    def floor_of(self, root):
        ''' floor of <root, centre>, i.e. the k with k < <root, v> < k+1 on A_w '''
        return int(np.array(root) @ self.scaled_centre()) // self.rd.coxeter_number

    @property
    def floors(self):
        ''' floors for all positive roots, in root order '''
        if self._floors is None:
            centre = self.scaled_centre()
            h = self.rd.coxeter_number
            self._floors = tuple(int(np.array(root) @ centre) // h for root in self.rd.positive_roots)
        return self._floors

    @property
    def length(self):
        return sum(abs(k) for k in self.floors)

    def act_root(self, root):
        ''' finite part applied to a root, on simple-root coordinates '''
        return tuple(int(c) for c in np.array(root) @ np.array(_finite_inverse(self.matrix)))

    def act_affine_root(self, ar):
        alpha = self.act_root(ar.alpha)
        return AffineRoot(alpha, ar.level + int(np.array(alpha) @ np.array(self.shift)))

    def word(self):
        ''' lexicographically smallest reduced word, greedy on left descents '''
        if self._word is None:
            simples = simple_affine_reflections(self.rd)
            letters = []
            w = self
            while w.length:
                for (i, s) in enumerate(simples):
                    ws = s*w
                    if ws.length < w.length:
                        letters.append(i)
                        w = ws
                        break
            self._word = tuple(letters)
        return self._word

    def __str__(self):
        return word_string(self.word(), self.rd) or 'e'

    def __repr__(self):
        return f'<{self.rd.label} {self}>'


def word_string(word, rd):
    if rd.rank >= 10:
        return ','.join(str(i) for i in word)
    return ''.join(str(i) for i in word)


@lru_cache(maxsize=None)
def simple_affine_reflections(rd):
    ''' s_{gamma,1} at index 0, followed by the finite simple reflections '''
    return [AffineWeylElem.reflection(rd, rd.highest_root, 1)] + \
           [AffineWeylElem.reflection(rd, alpha, 0) for alpha in rd.simple_roots]


def parse_word(rd, text):
    ''' read "010", "0,1,0", "" or "e" (or a list of indices) into a tuple of simple reflection indices '''
    if isinstance(text, AffineWeylElem):
        return text.word()
    if isinstance(text, (list, tuple)):
        letters = [int(i) for i in text]
    else:
        text = str(text).strip()
        if text in ('', 'e'):
            letters = []
        elif ',' in text or rd.rank >= 10:
            letters = [int(i) for i in text.split(',') if i.strip()]
        elif text.isdigit():
            letters = [int(i) for i in text]
        else:
            raise ValueError(f'cannot read word {text!r}, use digits {readableList([str(i) for i in range(rd.rank+1)])}')
    for i in letters:
        if not 0 <= i <= rd.rank:
            raise ValueError(f'letter {i} is not a simple reflection of {rd.label}, use {readableList([str(i) for i in range(rd.rank+1)])}')
    return tuple(letters)


def element(rd, word):
    ''' product of the simple reflections of a word, left to right '''
    simples = simple_affine_reflections(rd)
    w = AffineWeylElem.identity(rd)
    for i in parse_word(rd, word):
        w = w*simples[i]
    return w


@lru_cache(maxsize=None)
def _reflection_table(rd):
    return {AffineWeylElem.reflection(rd, alpha, 0).matrix: alpha for alpha in rd.positive_roots}


def reflection_of(w):
    ''' (alpha, n) with w = s_{alpha,n}, or None when w is not a reflection '''
    alpha = _reflection_table(w.rd).get(w.matrix)
    if alpha is None:
        return None
    a = w.rd.coroot_vector(alpha)
    j = next(i for (i, x) in enumerate(a) if x)
    n, remainder = divmod(w.shift[j], a[j])
    if remainder or any(n*x != m for (x, m) in zip(a, w.shift)):
        return None
    return alpha, n


def reflection_of_edge(x, y):
    ''' normalized label alpha_t of the reflection t = y x^-1, or None '''
    if x == y:
        return None
    found = reflection_of(y*x.inverse())
    if found is None:
        return None
    return normalize_label(AffineRoot(*found))


def act_dual(w, weight):
    ''' w(lambda, nu) = (w.lambda, nu - <w.lambda, mu>) '''
    rd = w.rd
    inverse = _finite_inverse(w.matrix)
    coords = rd.from_weight(weight.x)
    image = [sum(coords[i]*inverse[i][j] for i in range(rd.rank)) for j in range(rd.rank)]
    nu = Fraction(weight.delta) - sum(c*m for (c, m) in zip(image, w.shift))
    x = [sum(image[i]*int(rd.cartan[i][j]) for i in range(rd.rank)) for j in range(rd.rank)]
    if nu.denominator != 1 or any(c.denominator != 1 for c in x):
        raise ValueError(f'weight {weight} is not integral')
    return AffineWeight(tuple(int(c) for c in x), int(nu))


def length(w):
    return w.length


def delta_length(w):
    ''' signed count of hyperplanes between A_e and A_w '''
    return sum(w.floors)


def right_descents(w):
    return [i for (i, s) in enumerate(simple_affine_reflections(w.rd)) if (w*s).length < w.length]


def left_descents(w):
    return [i for (i, s) in enumerate(simple_affine_reflections(w.rd)) if (s*w).length < w.length]


@lru_cache(maxsize=200000)
def bruhat_leq(x, y):
    ''' x <= y in the Bruhat order, by descending along right descents of y '''
    simples = simple_affine_reflections(x.rd)
    while True:
        if x == y:
            return True
        if x.length >= y.length:
            return False
        if x.length == 0:
            return True
        i = right_descents(y)[0]
        s = simples[i]
        xs = x*s
        if xs.length < x.length:
            x = xs
        y = y*s


@lru_cache(maxsize=4096)
def bruhat_ideal(w):
    ''' frozenset {x : x <= w} '''
    if w.length == 0:
        return frozenset([w])
    i = right_descents(w)[0]
    s = simple_affine_reflections(w.rd)[i]
    lower = bruhat_ideal(w*s)
    return frozenset(lower | {x*s for x in lower})


def bruhat_interval_above(x, ideal):
    return [y for y in ideal if y != x and bruhat_leq(x, y)]


@lru_cache(maxsize=4096)
def reduced_words(w):
    ''' all reduced words of w, as tuples '''
    if w.length == 0:
        return ((),)
    simples = simple_affine_reflections(w.rd)
    words = []
    for i in right_descents(w):
        words.extend(word + (i,) for word in reduced_words(w*simples[i]))
    return tuple(sorted(set(words)))


def subword_products(rd, word):
    ''' set of products of all subexpressions of a word '''
    simples = simple_affine_reflections(rd)
    products = {AffineWeylElem.identity(rd)}
    for i in parse_word(rd, word):
        products |= {x*simples[i] for x in products}
    return products


def subword_ideal(rd, word):
    ''' Bruhat ideal generated by the subword products of a word '''
    ideal = set()
    for x in subword_products(rd, word):
        ideal |= bruhat_ideal(x)
    return ideal


def elements_upto(rd, lmax):
    ''' all elements of length at most lmax, sorted by length and word '''
    simples = simple_affine_reflections(rd)
    layer = {AffineWeylElem.identity(rd)}
    found = set(layer)
    for _ in range(lmax):
        layer = {x*s for x in layer for s in simples if (x*s).length > x.length}
        found |= layer
    return sorted(found, key=lambda x: (x.length, x.word()))


def _coroot_coordinates(rd, vector):
    ''' coordinates on the simple coroots of a vector given by its values <alpha_i, v> '''
    inverse = rd.cartan_inverse
    return [sum(Fraction(inverse[j][i])*vector[i] for i in range(rd.rank)) for j in range(rd.rank)]


@lru_cache(maxsize=200000)
def generic_leq(x, y):
    ''' x below y in the generic order: a chain of steps w -> s_{alpha,n} w with A_w below H_{alpha,n} leads from x to y

    The steps move the centre along positive coroots, so the search stays inside
    the box of centres between the centres of x and y.
    '''
    if x == y:
        return True
    rd = x.rd
    h = rd.coxeter_number
    if delta_length(y) <= delta_length(x):
        return False
    start = x.scaled_centre()
    target = _coroot_coordinates(rd, y.scaled_centre() - start)
    if min(target) < 0:
        return False
    steps = []
    for alpha in rd.positive_roots:
        steps.append((alpha, np.array(alpha), np.array(rd.coroot_vector(alpha)), rd.coroot(alpha)))
    top = delta_length(y)
    seen = {x}
    queue = deque([(x, [Fraction(0)]*rd.rank)])
    while queue:
        w, here = queue.popleft()
        centre = w.scaled_centre()
        room = [t - c for (t, c) in zip(target, here)]
        for (alpha, row, a, k) in steps:
            q = int(row @ centre)
            limit = min(room[j]/k[j] for j in range(rd.rank) if k[j] > 0)
            n = q//h + 1
            while n*h - q <= limit:
                step = AffineWeylElem.reflection(rd, alpha, n)*w
                if step == y:
                    return True
                if step not in seen and delta_length(step) < top:
                    seen.add(step)
                    gain = n*h - q
                    queue.append((step, [c + gain*kj for (c, kj) in zip(here, k)]))
                n += 1
    return False


def generic_oracle_leq(x, y, multiplier=8):
    ''' x below y in the generic order, read off as t_lambda x <= t_lambda y with lambda = 2*multiplier*rho^vee '''
    t = AffineWeylElem.translation(x.rd, [2*multiplier]*x.rd.rank)
    return bruhat_leq(t*x, t*y)


def generic_step_up(x, s):
    ''' True when x is below xs in the generic order (adjacent alcoves) '''
    simples = simple_affine_reflections(x.rd)
    alpha, n = reflection_of(x*simples[s]*x.inverse())
    return x.floor_of(alpha) < n


def separating_hyperplanes(x, y):
    ''' H(A_x, A_y): hyperplanes (alpha, n) with A_x below and A_y above '''
    found = []
    for (alpha, kx, ky) in zip(x.rd.positive_roots, x.floors, y.floors):
        found.extend((alpha, n) for n in range(kx+1, ky+1))
    return found


@dataclass(frozen=True)
class Alcove:
    ''' the alcove A_w = w(A_e) '''
    element: AffineWeylElem
    kind = 'alcove'

    @property
    def rd(self):
        return self.element.rd

    def __str__(self):
        return f'A_{self.element}'

    def act(self, x):
        ''' right action A_w.x = A_wx '''
        return Alcove(self.element*x)


def alcove_of(w):
    return Alcove(w)


def element_of(alcove):
    return alcove.element


@dataclass(frozen=True)
class WallCoset:
    ''' the coset {w, ws} for a simple reflection index s, kept as its shorter member '''
    element: AffineWeylElem
    s: int
    kind = 'wall'

    @classmethod
    def of(cls, w, s):
        ws = w*simple_affine_reflections(w.rd)[s]
        return cls(ws if ws.length < w.length else w, s)

    @property
    def rd(self):
        return self.element.rd

    @property
    def members(self):
        return (self.element, self.element*simple_affine_reflections(self.rd)[self.s])

    def hyperplane(self):
        ''' (alpha_B, n_B) of the hyperplane the wall lies on '''
        w = self.element
        return reflection_of(w*simple_affine_reflections(self.rd)[self.s]*w.inverse())

    def __str__(self):
        return f'B{self.s}_{self.element}'


def wall_of(alcove, s):
    return WallCoset.of(alcove.element, s)


def wall_minus(wall):
    alpha, n = wall.hyperplane()
    low = [w for w in wall.members if w.floor_of(alpha) < n]
    return Alcove(low[0])


def wall_plus(wall):
    alpha, n = wall.hyperplane()
    high = [w for w in wall.members if w.floor_of(alpha) >= n]
    return Alcove(high[0])


def beta_up(facet, beta):
    ''' s_{beta,n} F with n smallest such that F lies on or below H_{beta,n} '''
    if isinstance(facet, Alcove):
        w = facet.element
        return Alcove(AffineWeylElem.reflection(w.rd, beta, w.floor_of(beta)+1)*w)
    alpha, _ = facet.hyperplane()
    if tuple(alpha) == tuple(beta):
        return facet
    w = facet.element
    return WallCoset.of(AffineWeylElem.reflection(w.rd, beta, w.floor_of(beta)+1)*w, facet.s)


def beta_down(facet, beta):
    ''' inverse of beta_up '''
    if isinstance(facet, Alcove):
        w = facet.element
        return Alcove(AffineWeylElem.reflection(w.rd, beta, w.floor_of(beta))*w)
    alpha, _ = facet.hyperplane()
    if tuple(alpha) == tuple(beta):
        return facet
    w = facet.element
    return WallCoset.of(AffineWeylElem.reflection(w.rd, beta, w.floor_of(beta))*w, facet.s)


def wall_combinatorics(wall, beta):
    ''' {beta_up(B-), beta_up(B+)} and whether beta_up moves the two sides of the wall as a pair

    When beta_up(B) is B, beta_up(B-) must be B+; otherwise the pair
    {beta_up(B-), beta_up(B+)} must be the two alcoves of the wall beta_up(B).
    '''
    minus, plus = wall_minus(wall), wall_plus(wall)
    images = {beta_up(minus, beta), beta_up(plus, beta)}
    up = beta_up(wall, beta)
    if up == wall:
        holds = beta_up(minus, beta) == plus
    else:
        holds = images == {wall_minus(up), wall_plus(up)}
    return images, holds


def finite_longest(rd):
    ''' w_0 of the finite Weyl group '''
    simples = simple_affine_reflections(rd)[1:]
    w = AffineWeylElem.identity(rd)
    grown = True
    while grown:
        grown = False
        for s in simples:
            if (w*s).length > w.length:
                w = w*s
                grown = True
                break
    return w


def _in_box(w):
    return all(w.floor_of(alpha) == -1 for alpha in w.rd.simple_roots)


@lru_cache(maxsize=None)
def antifundamental_box(rd):
    ''' elements whose alcoves lie in -1 < <alpha_i, v> < 0 for all simple roots '''
    simples = simple_affine_reflections(rd)
    start = finite_longest(rd)
    box = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in simples:
            ws = w*s
            if ws not in box and _in_box(ws):
                box.add(ws)
                queue.append(ws)
    return frozenset(box)


@lru_cache(maxsize=None)
def w_hat0(rd):
    ''' the element whose alcove is the generic-smallest one in the box '''
    return min(antifundamental_box(rd), key=lambda w: (delta_length(w), w.word()))


@lru_cache(maxsize=None)
def W_circ(rd):
    return bruhat_ideal(w_hat0(rd))
