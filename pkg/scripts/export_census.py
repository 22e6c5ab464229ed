"""
Export census presentations into the semicolon record format.

Needs SnapPy, which is not a dependency of the package; the output is
committed under fixtures/ so tests never import it.

    python scripts/export_census.py fixtures/table1.csv > fixtures/census.txt
"""

import csv
import sys
from math import gcd

import snappy

SWAP = str.maketrans("abAB", "xyXY")


def word_power(w, e):
    if e < 0:
        w = w[::-1].swapcase()
        e = -e
    return w * e


def phi_of(word, phi):
    total = 0
    for ch in word:
        v = phi["xy".index(ch.lower())]
        total += v if ch.islower() else -v
    return total


def exgcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = exgcd(b, a % b)
    return g, y, x - (a // b) * y


def record(name):
    M = snappy.Manifold(name)
    if M.num_cusps() != 1:
        return None, f"{M.num_cusps()} cusps"
    G = M.fundamental_group()
    if len(G.generators()) != 2 or len(G.relators()) != 1:
        return None, f"{len(G.generators())} generators"
    rel = G.relators()[0].translate(SWAP)
    mer, lon = (w.translate(SWAP) for w in G.peripheral_curves()[0])
    ax = sum(1 if c == "x" else -1 for c in rel if c in "xX")
    ay = sum(1 if c == "y" else -1 for c in rel if c in "yY")
    if ax == 0 and ay == 0:
        return None, "first Betti number above 1"
    g = gcd(ax, ay)
    phi = (ay // g, -ax // g)
    # Peripheral words commute, so powers can be concatenated freely.
    p, q = phi_of(mer, phi), phi_of(lon, phi)
    h = gcd(p, q)
    a, b = -q // h, p // h
    _, c, d = exgcd(b, -a)  # c*b - d*a == 1 up to sign
    if c * b - d * a == -1:
        c, d = -c, -d
    longitude = word_power(mer, a) + word_power(lon, b)
    meridian = word_power(mer, c) + word_power(lon, d)
    assert phi_of(longitude, phi) == 0
    return f"{name}; {rel}; {meridian}; {longitude}", None


def main(argv):
    names = [row["name"] for row in csv.DictReader(open(argv[1]))]
    print("# name; relator; meridian; longitude")
    print(f"# exported with SnapPy {snappy.__version__}; longitude is the homological one")
    for name in names:
        line, why = record(name)
        print(line if line else f"# {name}: skipped ({why})")


if __name__ == "__main__":
    main(sys.argv)
