"""Smoke test for the supportwit extension module."""

import supportwit as sw


def main():
    p, c = sw.example("shortgor3")
    assert c.verify(p) == [], c.verify(p)
    print("shortgor3:", c.status, "steps", c.steps)

    ring = sw.Ring(["x", "y", "z"], 32003)
    p = sw.Presentation(ring, ["x^2 - y^2", "x^2 - z^2", "xy", "xz", "yz"])
    built = sw.construct(p, seed=1)
    assert built.verify(p) == []
    assert built.intersection_dim == 0
    assert sw.Certificate.from_json(built.to_json()).to_json() == built.to_json()
    print("construct over F_32003:", built.status, "dims", built.running_dims)

    q = sw.Ring(["x", "y", "z"])
    thomas = sw.Presentation(q, ["x^2 + y^2 + z^2", "xyz", "x^3"], span_dim=2)
    j = q.ideal(["x^2 + y^2 + z^2", "y", "x^3"])
    assert thomas.kernel(j) == [["0", "1", "0"]]
    manual = sw.manual_certificate(thomas, [j])
    manual.check(thomas)
    print("thomas:", manual.status)

    mono = sw.Presentation(sw.Ring(["x", "y", "z", "w"]), ["xy", "yz", "zw", "x^2w"])
    m = sw.monomial_witnesses(mono)
    assert m.intersection_dim == 0 and m.verify(mono) == []
    print("monomial recipe:", m.quotients()[1])

    try:
        sw.Certificate.from_json("{}")
    except ValueError as e:
        print("bad certificate rejected:", e)
    else:
        raise AssertionError("expected ValueError")
    print("smoke test passed")


if __name__ == "__main__":
    main()
