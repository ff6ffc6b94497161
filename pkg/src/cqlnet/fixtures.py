"""Built-in categories, models, and nets for demos and tests."""

from __future__ import annotations

import pathlib

C2_CAT = """\
category c2
object Q
arrow X : Q -> Q
compose X ; X = id Q
dagger X = X
"""

C2_MOD = """\
model flip over c2
scalars exact
dim Q = 2
mat X = [ [0, 1] ; [1, 0] ]
"""

C2_BOOL_MOD = """\
model flipbool over c2
scalars bool
dim Q = 2
mat X = [ [0, 1] ; [1, 0] ]
"""

# The eight signed Pauli matrices with integer entries, closed under product
# and transpose.  The composition table and dagger are generated from them.
_PAULI = {
    "id Q": ((1, 0), (0, 1)),
    "X": ((0, 1), (1, 0)),
    "Z": ((1, 0), (0, -1)),
    "XZ": ((0, -1), (1, 0)),
    "m1": ((-1, 0), (0, -1)),
    "mX": ((0, -1), (-1, 0)),
    "mZ": ((-1, 0), (0, 1)),
    "mXZ": ((0, 1), (-1, 0)),
}


def _mul2(m, n):
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def _transpose2(m):
    return tuple(tuple(m[j][i] for j in range(2)) for i in range(2))


def _make_pauli8_cat():
    byval = {v: k for k, v in _PAULI.items()}
    names = [k for k in _PAULI if k != "id Q"]
    lines = ["category pauli8", "object Q"]
    lines.extend(f"arrow {f} : Q -> Q" for f in names)
    for f in names:
        for g in names:
            h = byval[_mul2(_PAULI[g], _PAULI[f])]
            lines.append(f"compose {f} ; {g} = {h}")
    for f in names:
        lines.append(f"dagger {f} = {byval[_transpose2(_PAULI[f])]}")
    return "\n".join(lines) + "\n"


def _make_pauli8_mod():
    lines = ["model pauli over pauli8", "scalars exact", "dim Q = 2"]
    for f, m in _PAULI.items():
        if f == "id Q":
            continue
        body = " ; ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m)
        lines.append(f"mat {f} = [ {body} ]")
    return "\n".join(lines) + "\n"


PAULI8_CAT = _make_pauli8_cat()
PAULI8_MOD = _make_pauli8_mod()

BELL_NET = """\
net bell
conclusions Q* , Q
slice
  ax a : id Q
  out a.0 , a.1
end
"""

BELLX_NET = """\
net bellx
conclusions Q* , Q
slice
  ax a : X
  out a.0 , a.1
end
"""

# A chain of axioms joined by identity cuts; both cut-elimination orders
# must meet at the same composite (associativity of composition).
CHAIN_NET = """\
net chain
conclusions Q* , Q
slice
  ax a : X
  ax b : Z
  ax c : XZ
  cut a.1 , b.0 : id Q
  cut b.1 , c.0 : id Q
  out a.0 , c.1
end
"""

# Two axioms cut into a closed ring.  The two reduction orders end in the
# loops mZ and Z, which agree only up to the loop-class quotient.
RING_NET = """\
net ring
conclusions
slice
  ax a : id Q
  ax b : id Q
  cut a.1 , b.0 : X
  cut b.1 , a.0 : XZ
  out
end
"""

# Entanglement swapping: two shared pairs, a four-outcome joint measurement
# on the middle legs, and the classical outcome kept as a biproduct index.
SWAPPING_NET = """\
net swapping
conclusions ((I + I) + (I + I)) , Q* , Q
slice
  ax a : id Q
  ax b : id Q
  unit u
  plus1 p = u.0 | I
  plus1 q = p.0 | (I + I)
  cut a.1 , b.0 : id Q
  out q.0 , a.0 , b.1
end
slice
  ax a : id Q
  ax b : id Q
  unit u
  plus2 p = I | u.0
  plus1 q = p.0 | (I + I)
  cut a.1 , b.0 : X
  out q.0 , a.0 , b.1
end
slice
  ax a : id Q
  ax b : id Q
  unit u
  plus1 p = u.0 | I
  plus2 q = (I + I) | p.0
  cut a.1 , b.0 : Z
  out q.0 , a.0 , b.1
end
slice
  ax a : id Q
  ax b : id Q
  unit u
  plus2 p = I | u.0
  plus2 q = (I + I) | p.0
  cut a.1 , b.0 : XZ
  out q.0 , a.0 , b.1
end
"""

EXAMPLES = {
    "c2.cat": C2_CAT,
    "c2.mod": C2_MOD,
    "c2bool.mod": C2_BOOL_MOD,
    "pauli8.cat": PAULI8_CAT,
    "pauli8.mod": PAULI8_MOD,
    "bell.net": BELL_NET,
    "bellx.net": BELLX_NET,
    "chain.net": CHAIN_NET,
    "ring.net": RING_NET,
    "swapping.net": SWAPPING_NET,
}


def write_examples(dirpath):
    """Write all example files into a directory; returns the paths written."""
    root = pathlib.Path(dirpath)
    root.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname, text in EXAMPLES.items():
        p = root / fname
        p.write_text(text)
        paths.append(p)
    return paths
