'''Exact coefficient fields and the polynomial rings over them.

The symmetric algebra of the affine weight lattice is realized as k[a1, ..., ar, d]:
one variable per simple root and one for delta, each in degree 2.
'''
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import sympy
from sympy.polys.domains import QQ, GF
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from .exceptions import DivisionFailure, PyAlcoveException
from .utils import readableList


class ScalarField:
    ''' the rationals, or the prime field F_p

    Args:
        p (int): characteristic, None for Q

    Example::

        k = ScalarField.parse('F5')
        k.nullspace([[1, 2], [2, 4]], 2)
    '''

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if not sympy.isprime(p):
                raise ValueError(f'{p} is not a prime')
        self.p = p
        self.domain = QQ if p is None else GF(p)
        self._rings = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, tag, p=None):
        ''' Q, Fp (with p given separately), F5 or F_5 '''
        tag = str(tag).strip()
        if tag in ('Q', 'QQ', '0'):
            return cls()
        if tag in ('Fp', 'F_p'):
            if p is None:
                raise ValueError('field Fp needs a prime, pass --p')
            return cls(p)
        if tag[:1] == 'F' and tag.lstrip('F_').isdigit():
            return cls(int(tag.lstrip('F_')))
        raise ValueError(f'unknown field {tag!r}, use {readableList(["Q", "Fp", "F3", "F5"])}')

    @property
    def name(self):
        return 'Q' if self.p is None else f'F{self.p}'

    @property
    def characteristic(self):
        return self.p or 0

    def __eq__(self, other):
        return isinstance(other, ScalarField) and other.p == self.p

    def __hash__(self):
        return hash(('ScalarField', self.p))

    def __repr__(self):
        return f'ScalarField({self.name})'

    def __str__(self):
        return self.name

    def scalar(self, value):
        ''' an int or Fraction as an element of the field '''
        if isinstance(value, Fraction):
            if self.p is not None and value.denominator % self.p == 0:
                raise DivisionFailure(f'{value} has no image in {self.name}')
            return self.domain(value.numerator)/self.domain(value.denominator)
        return self.domain(int(value))

    def is_zero(self, value):
        return self.domain.is_zero(value)

    def ring(self, rd):
        ''' polynomial ring k[a1..ar, d] with lex order, one per rank '''
        try:
            return self._rings[rd.rank]
        except KeyError:
            pass
        names = ','.join([f'a{i+1}' for i in range(rd.rank)] + ['d'])
        R = ring(names, self.domain, lex)[0]
        with self._lock:
            self._rings.setdefault(rd.rank, R)
        return self._rings[rd.rank]

    def linear_form(self, rd, coordinates):
        ''' sum of c_i a_i + c_d d from root-and-delta coordinates '''
        R = self.ring(rd)
        form = R.zero
        for (c, gen) in zip(coordinates, R.gens):
            if c:
                form += R(self.scalar(c))*gen
        return form

    def weight_form(self, rd, weight):
        ''' an AffineWeight as a linear form.
        weights off the root lattice need 1/det(Cartan), over F_p with p | det they raise PyAlcoveException '''
        coordinates = rd.from_weight(weight.x)
        if self.p is not None and any(c.denominator % self.p == 0 for c in coordinates):
            raise PyAlcoveException(f'weight {weight.x} is not in the root lattice of {rd.label}, it has no linear form over {self.name}')
        return self.linear_form(rd, list(coordinates) + [weight.delta])

    def _element(self, c):
        return self.scalar(c) if isinstance(c, (int, Fraction)) else c

    def matrix(self, rows, ncols):
        ''' sparse DomainMatrix from rows given as lists or as {column: value} dicts '''
        entries = {}
        for (i, row) in enumerate(rows):
            found = {}
            for (j, c) in (row.items() if isinstance(row, dict) else enumerate(row)):
                c = self._element(c)
                if c:
                    found[j] = c
            if found:
                entries[i] = found
        return DomainMatrix(entries, (len(rows), ncols), self.domain)

    def rref(self, rows, ncols):
        ''' (nonzero reduced rows as {column: value} dicts, pivot columns) '''
        if not rows or not ncols:
            return [], ()
        reduced, pivots = self.matrix(rows, ncols).rref()
        reduced = reduced.to_sparse().rep
        return [dict(reduced.get(k, {})) for k in range(len(pivots))], tuple(pivots)

    def rank(self, rows, ncols):
        return len(self.rref(rows, ncols)[1])

    def nullspace(self, rows, ncols):
        ''' basis of {x : rows.x = 0}, as lists of field elements '''
        zero, one = self.domain.zero, self.domain.one
        reduced, pivots = self.rref(rows, ncols)
        pivot_set = set(pivots)
        free = [j for j in range(ncols) if j not in pivot_set]
        basis = []
        for f in free:
            vector = [zero]*ncols
            vector[f] = one
            for (row, pivot) in zip(reduced, pivots):
                if f in row:
                    vector[pivot] = -row[f]
            basis.append(vector)
        return basis

    def solve(self, rows, rhs, ncols):
        ''' one solution of rows.x = rhs, or None '''
        augmented = [list(row) + [b] for (row, b) in zip(rows, rhs)]
        reduced, pivots = self.rref(augmented, ncols+1)
        if ncols in pivots:
            return None
        solution = [self.domain.zero]*ncols
        for (row, pivot) in zip(reduced, pivots):
            solution[pivot] = row.get(ncols, self.domain.zero)
        return solution

    def complement(self, span_rows, rows, ncols):
        ''' indexes of rows that extend a basis of span_rows, taken greedily: the pivot columns of the transposed stack '''
        if not rows or not ncols:
            return []
        offset = len(span_rows)
        _, pivots = self.matrix(list(span_rows) + list(rows), ncols).transpose().rref()
        return [j - offset for j in pivots if j >= offset]


@lru_cache(maxsize=None)
def monomials(nvars, degree):
    ''' exponent tuples of the monomials of a given (even) degree, variables in degree 2 '''
    if degree < 0 or degree % 2:
        return ()
    found = []
    for combo in combinations_with_replacement(range(nvars), degree//2):
        exponents = [0]*nvars
        for i in combo:
            exponents[i] += 1
        found.append(tuple(exponents))
    return tuple(sorted(found, reverse=True))


def poly_degree(p):
    ''' degree of a homogeneous polynomial, None for zero '''
    if not p:
        return None
    return 2*sum(next(iter(p.keys())))


def coefficient_vector(p, basis):
    ''' coefficients of p on a list of monomials '''
    zero = p.ring.domain.zero
    return [p.get(m, zero) for m in basis]


def from_coefficients(R, coefficients, basis):
    return R.from_dict({m: c for (m, c) in zip(basis, coefficients) if c})


def fields(tags, p=None):
    return [ScalarField.parse(tag, p) for tag in tags]
