import pytest

from stackychow.parsing import ParseError
from stackychow.script import ScriptError, run_script

SESSION = """
# P^2 as the projectivization of a rank-3 trivial bundle
ring P = proj_bundle(base=point, rank=3)
let a = zeta^2
print integrate(a)
print zeta^3

use point
bundle E = chern(1 + c1)
print segre(E, 2)

ring W = wpl(4, 6)
print integrate(h)
"""


def test_session():
    assert run_script(SESSION) == [
        ("integrate(a)", "1"),
        ("zeta^3", "0"),
        ("segre(E, 2)", "c1^2"),
        ("integrate(h)", "1/24"),
    ]


def test_bundle_calculus():
    out = dict(
        run_script(
            """
            ring X = proj_space(3)
            bundle L = line(h)
            bundle E = whitney(L, dual(L))
            bundle T = tensor(E, h)
            print chern(E)
            print chern(T)
            print segre(E)*chern(E)
            print rank(T)
            ring Y = proj_bundle(base=X, bundle=E)
            print pushforward(zeta^3)
            print theta(zeta^2, 0)
            """
        )
    )
    assert out["chern(E)"] == "-h^2+1"
    assert out["chern(T)"] == "2*h+1"
    assert out["segre(E)*chern(E)"] == "1"
    assert out["rank(T)"] == "2"
    assert out["pushforward(zeta^3)"] == "h^2"
    assert out["theta(zeta^2, 0)"] == "h^2"


@pytest.mark.parametrize(
    "script",
    ["print 1 +", "frobnicate x", "ring R = nonsense(3)", "print undefined_name", "bundle E = chern(1 + q)"],
)
def test_malformed_scripts(script):
    with pytest.raises(ParseError):
        run_script(script)


def test_domain_errors_are_value_errors():
    with pytest.raises(ValueError) as info:
        run_script("ring W = wpl(2, 3)\nprint theta(h, 0)")
    assert not isinstance(info.value, ScriptError)
