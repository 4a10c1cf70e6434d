## conftest.py is a special file name
## we use it to load the parameter file and build the affine systems
## the testparms fixture is referenced in test modules by name (testparms), but because conftest.py is not a test the file is only read once

import pytest
import toml
from pyalcove import AffineSystem
from pyalcove.scalars import ScalarField


# the systems are built the first time only and kept in testparm, next calls just switch the field in 'field'
def systems(testparm):
    if 'A1' not in testparm:
        testparm.update({'A1': AffineSystem('A1~'), 'A2': AffineSystem('A2~')})
    return testparm

def rationalField(testparm):
    systems(testparm)
    testparm.update({'field': ScalarField()})
    return testparm

def primeField(testparm):
    systems(testparm)
    testparm.update({'field': ScalarField(testparm['prime'])})
    return testparm


# This code will run once before all tests in the directory
with open('testparm.toml', 'r') as f:
     testparm = toml.load(f)

# testparms (with an s) is called once for each source, in each testmember
# we run each testmember with 2 coefficient fields, yield returns testparm with the current field in testparm['field']
sources = [rationalField,primeField]
@pytest.fixture(autouse=True,scope="package",params=sources)
def testparms(request):
    yield request.param(testparm)
