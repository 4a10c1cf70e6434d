'''Finite root data, affine weights and affine roots.

Roots are integer coordinate tuples on the simple roots, weights use the
fundamental-weight basis, and the affine part appends the coefficient of delta.
'''
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
import sympy

from .utils import readableList


# scaled squared lengths and inner products of the simple roots, indexes 0-based in Bourbaki order
_series_info = {
    'A': {'ranks': lambda n: n >= 1},
    'B': {'ranks': lambda n: n >= 2},
    'C': {'ranks': lambda n: n >= 2},
    'D': {'ranks': lambda n: n >= 4},
    'E': {'ranks': lambda n: n in (6, 7, 8)},
    'F': {'ranks': lambda n: n == 4},
    'G': {'ranks': lambda n: n == 2},
}


def parse_type_label(label):
    ''' split A2, A2~ or g2 into ('A', 2), ValueError for anything that is not a finite irreducible type '''
    found = re.fullmatch(r'\s*([A-Ga-g])\s*(\d+)\s*~?\s*', str(label))
    if not found:
        raise ValueError(f'unknown type label {label!r}, expected a series {readableList(_series_info.keys())} with a rank, like A2~')
    series, rank = found.group(1).upper(), int(found.group(2))
    if not _series_info[series]['ranks'](rank):
        raise ValueError(f'type {series}{rank} does not exist')
    return series, rank


def _gram_data(series, rank):
    if series == 'A':
        lengths = [2]*rank
        links = {(i, i+1): -1 for i in range(rank-1)}
    elif series == 'B':
        lengths = [4]*(rank-1) + [2]
        links = {(i, i+1): -2 for i in range(rank-1)}
    elif series == 'C':
        lengths = [2]*(rank-1) + [4]
        links = {(i, i+1): -1 for i in range(rank-2)}
        links[(rank-2, rank-1)] = -2
    elif series == 'D':
        lengths = [2]*rank
        links = {(i, i+1): -1 for i in range(rank-2)}
        links[(rank-3, rank-1)] = -1
    elif series == 'E':
        lengths = [2]*rank
        links = {(a-1, b-1): -1 for (a, b) in [(1,3),(3,4),(4,5),(5,6),(6,7),(7,8),(2,4)] if b <= rank}
    elif series == 'F':
        lengths = [4, 4, 2, 2]
        links = {(0, 1): -2, (1, 2): -2, (2, 3): -1}
    else:
        lengths = [2, 6]
        links = {(0, 1): -3}
    return lengths, links


def cartan_matrix(series, rank):
    ''' integer matrix with entry [i][j] = <alpha_i, alpha_j^vee> '''
    lengths, links = _gram_data(series, rank)
    gram = np.diag(lengths)
    for (i, j), product in links.items():
        gram[i, j] = gram[j, i] = product
    return np.array([[2*gram[i, j]//gram[j, j] for j in range(rank)] for i in range(rank)], dtype=int)


def _reflection_closure(cartan):
    ''' positive roots with their coroots, both on simple bases, generated from the simple roots by simple reflections '''
    rank = len(cartan)
    closure = {}
    queue = []
    for i in range(rank):
        unit = tuple(int(i == j) for j in range(rank))
        closure[unit] = unit
        queue.append(unit)
    while queue:
        root = queue.pop()
        coroot = closure[root]
        for i in range(rank):
            pairing = sum(root[j]*cartan[j][i] for j in range(rank))
            if pairing == 0:
                continue
            image = tuple(root[j] - (pairing if j == i else 0) for j in range(rank))
            if min(image) < 0 or image in closure:
                continue
            copairing = sum(cartan[i][j]*coroot[j] for j in range(rank))
            closure[image] = tuple(coroot[j] - (copairing if j == i else 0) for j in range(rank))
            queue.append(image)
    return closure


class RootDatum:
    ''' finite irreducible root system of a simply connected group, with its affinization implied

    Args:
        label (str): series and rank, optionally with the affine marker: A1~, A2, G2~

    Example::

        rd = RootDatum('A2~')
        rd.positive_roots   # [(1, 0), (0, 1), (1, 1)]
        rd.coxeter_number   # 3
    '''

    def __init__(self, label):
        self.series, self.rank = parse_type_label(label)
        self.label = f'{self.series}{self.rank}~'
        self.cartan = cartan_matrix(self.series, self.rank)
        closure = _reflection_closure(self.cartan.tolist())
        self.positive_roots = sorted(closure, key=lambda root: (sum(root), tuple(-c for c in root)))
        self._coroots = closure
        self._root_index = {root: i for (i, root) in enumerate(self.positive_roots)}
        self.highest_root = self.positive_roots[-1]
        self.coxeter_number = self.height(self.highest_root) + 1

    def __repr__(self):
        return f'RootDatum({self.label!r})'

    def __eq__(self, other):
        return isinstance(other, RootDatum) and other.label == self.label

    def __hash__(self):
        return hash(self.label)

    @property
    def simple_roots(self):
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @property
    def simple_roots_weights(self):
        ''' simple roots in the fundamental-weight basis, the rows of the Cartan matrix '''
        return [tuple(int(c) for c in row) for row in self.cartan]

    @property
    def simple_coroots(self):
        return self.simple_roots

    @cached_property
    def cartan_inverse(self):
        inverse = sympy.Matrix(self.cartan.tolist()).inv()
        return [[Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(self.rank)] for i in range(self.rank)]

    def height(self, root):
        return sum(root)

    def is_root(self, root):
        root = tuple(root)
        return root in self._root_index or tuple(-c for c in root) in self._root_index

    def is_positive(self, root):
        return tuple(root) in self._root_index

    def positive_part(self, root):
        ''' (positive root, sign) for a root of either sign '''
        root = tuple(root)
        if root in self._root_index:
            return root, 1
        negative = tuple(-c for c in root)
        if negative in self._root_index:
            return negative, -1
        raise ValueError(f'{root} is not a root of {self.label}')

    def root_index(self, root):
        return self._root_index[self.positive_part(root)[0]]

    def coroot(self, root):
        ''' coroot of a root, on the simple coroots '''
        positive, sign = self.positive_part(root)
        return tuple(sign*k for k in self._coroots[positive])

    def pairing(self, root, coroot):
        ''' <root, coroot> from simple-basis coordinates of both '''
        return int(np.array(root) @ self.cartan @ np.array(coroot))

    def coroot_vector(self, root):
        ''' the coroot of root evaluated by the simple roots: entry i is <alpha_i, root^vee> '''
        return tuple(int(a) for a in self.cartan @ np.array(self.coroot(root)))

    def reflect(self, beta, alpha):
        ''' s_alpha(beta) '''
        pairing = self.pairing(beta, self.coroot(alpha))
        return tuple(b - pairing*a for (a, b) in zip(alpha, beta))

    def to_weight(self, root):
        ''' fundamental-weight coordinates of an element of the root lattice '''
        return tuple(int(x) for x in np.array(root) @ self.cartan)

    def from_weight(self, weight):
        ''' simple-root coordinates (Fractions) of a weight '''
        return tuple(sum(Fraction(weight[i])*self.cartan_inverse[i][j] for i in range(self.rank)) for j in range(self.rank))

    @property
    def number_of_positive_roots(self):
        return len(self.positive_roots)


def build_root_datum(label):
    ''' RootDatum for a type label, positive roots in height order '''
    return RootDatum(label)


@dataclass(frozen=True)
class AffineWeight:
    ''' element (x, nu) of X + Z delta, x in the fundamental-weight basis '''
    x: tuple
    delta: int = 0

    @property
    def degree(self):
        ''' polynomial degree of a nonzero element '''
        return 2

    @property
    def is_zero(self):
        return self.delta == 0 and not any(self.x)

    def __add__(self, other):
        return AffineWeight(tuple(a+b for (a, b) in zip(self.x, other.x)), self.delta+other.delta)

    def __neg__(self):
        return AffineWeight(tuple(-a for a in self.x), -self.delta)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, factor):
        return AffineWeight(tuple(factor*a for a in self.x), factor*self.delta)

    __rmul__ = __mul__

    @classmethod
    def delta_of(cls, rd):
        return cls(tuple([0]*rd.rank), 1)

    @classmethod
    def of_root(cls, rd, root, delta=0):
        return cls(rd.to_weight(root), delta)


@dataclass(frozen=True)
class AffineRoot:
    ''' alpha_n = (alpha, 0) - n delta, alpha a finite root on the simple roots '''
    alpha: tuple
    level: int = 0

    def __post_init__(self):
        if not any(self.alpha):
            raise ValueError('an affine root needs a nonzero finite part')
        object.__setattr__(self, 'alpha', tuple(int(c) for c in self.alpha))
        object.__setattr__(self, 'level', int(self.level))

    @classmethod
    def from_value(cls, alpha, delta):
        ''' the affine root with value alpha + delta*delta '''
        return cls(tuple(alpha), -delta)

    @property
    def delta_coefficient(self):
        return -self.level

    def value(self, rd):
        return AffineWeight(rd.to_weight(self.alpha), -self.level)

    @property
    def coordinates(self):
        ''' simple-root coordinates followed by the delta coefficient '''
        return self.alpha + (self.delta_coefficient,)

    def __neg__(self):
        return AffineRoot(tuple(-c for c in self.alpha), -self.level)

    def height(self, rd):
        ''' number of simple affine roots adding up to this root, negative for negative roots '''
        return self.delta_coefficient*rd.coxeter_number + sum(self.alpha)

    def __str__(self):
        terms = []
        for (i, c) in enumerate(self.alpha):
            if c:
                terms.append(f'{"+" if c > 0 else "-"}{abs(c) if abs(c) != 1 else ""}a{i+1}')
        m = self.delta_coefficient
        if m:
            terms.append(f'{"+" if m > 0 else "-"}{abs(m) if abs(m) != 1 else ""}d')
        text = ''.join(terms)
        return text[1:] if text.startswith('+') else text


def is_positive_affine(ar):
    ''' True for alpha + m delta with m > 0, or m = 0 and alpha a positive root '''
    m = ar.delta_coefficient
    return m > 0 or (m == 0 and min(ar.alpha) >= 0)


def normalize_label(ar):
    ''' the member of {ar, -ar} that is a positive affine root '''
    if ar is None:
        raise ValueError('cannot normalize an empty label')
    return ar if is_positive_affine(ar) else -ar


def simple_affine_roots(rd):
    ''' alpha_0 = delta - gamma followed by the finite simple roots '''
    return [AffineRoot.from_value(tuple(-c for c in rd.highest_root), 1)] + [AffineRoot(alpha, 0) for alpha in rd.simple_roots]
