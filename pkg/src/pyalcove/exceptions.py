class PyAlcoveException(Exception):
    def __init__(self, message):
        self.message = message
        super().__init__(self.message)


class GKMViolation(PyAlcoveException):
    ''' labels at a common vertex become dependent over the selected field '''
    def __init__(self, message, primes=(), triples=()):
        self.primes = sorted(primes)
        self.triples = list(triples)
        super().__init__(message)


class CutoffInstability(PyAlcoveException):
    ''' minimal generators still appear in the last degrees below the cutoff '''
    def __init__(self, message, cutoff=None, degrees=()):
        self.cutoff = cutoff
        self.degrees = list(degrees)
        super().__init__(message)


class FreeFitFailure(PyAlcoveException):
    def __init__(self, message, expected=(), found=()):
        self.expected = list(expected)
        self.found = list(found)
        super().__init__(message)


class DivisionFailure(PyAlcoveException):
    pass
