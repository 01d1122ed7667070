"""Exact coefficient rings: ZZ, QQ, prime fields, polynomials, monic quotients.

Every element is held in canonical form at all times: a dict from exponent
tuples to coefficients with no zero entries, prime-field coefficients reduced
to [0, p), and univariate quotient rings reduced modulo their monic relation.
The string format round-trips: ``parse(str(e)) == e``.
"""

from __future__ import annotations

import re
from fractions import Fraction


class RingError(ValueError):
    """Raised for malformed ring data or elements used over the wrong ring."""


def _normalize_base(base):
    """Accept 'QQ', 'ZZ', ('Fp', p) or {'Fp': p}; return (kind, char)."""
    if base == "QQ":
        return "QQ", 0
    if base == "ZZ":
        return "ZZ", 0
    if isinstance(base, dict) and set(base) == {"Fp"}:
        base = ("Fp", base["Fp"])
    if isinstance(base, tuple) and len(base) == 2 and base[0] == "Fp":
        p = base[1]
        if not isinstance(p, int) or p < 2:
            raise RingError(f"invalid prime field characteristic {p!r}")
        for q in range(2, int(p ** 0.5) + 1):
            if p % q == 0:
                raise RingError(f"prime field characteristic {p} is composite")
        return "Fp", p
    raise RingError(f"unknown coefficient base {base!r}")


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Ring:
    """A polynomial ring over an exact base, optionally modulo a monic relation.

    ``Ring("QQ", ("x", "y"))`` is QQ[x, y]; ``Ring("ZZ")`` is the integers;
    ``Ring("QQ", ("x",), quotient="x^2 - 1")`` is QQ[x]/(x^2 - 1). Quotients
    are only allowed with exactly one variable and a monic relation.
    """

    __slots__ = ("kind", "char", "variables", "quotient", "_qlist", "_varindex")

    def __init__(self, base, variables=(), quotient=None):
        self.kind, self.char = _normalize_base(base)
        if isinstance(variables, str):
            variables = (variables,)
        variables = tuple(str(v) for v in variables)
        for v in variables:
            if not _NAME_RE.match(v):
                raise RingError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise RingError("duplicate variable names")
        self.variables = variables
        self._varindex = {v: i for i, v in enumerate(variables)}
        self.quotient = None
        self._qlist = None
        if quotient is not None:
            if len(variables) != 1:
                raise RingError("a quotient requires exactly one variable")
            plain = Ring((self.kind, self.char) if self.kind == "Fp" else self.kind,
                         variables)
            q = plain.parse(quotient) if isinstance(quotient, str) else quotient
            if not isinstance(q, RingElement) or q.ring != plain:
                raise RingError("quotient must be a polynomial in the ring variable")
            d = q.total_degree()
            if d < 1:
                raise RingError("quotient must have degree at least 1")
            lead = q._c.get((d,))
            if lead != plain.c_one():
                raise RingError("quotient must be monic")
            self.quotient = q
            self._qlist = [q._c.get((i,), plain.c_zero()) for i in range(d + 1)]

    # -- base coefficient arithmetic ----------------------------------------

    def c_zero(self):
        return Fraction(0) if self.kind == "QQ" else 0

    def c_one(self):
        return Fraction(1) if self.kind == "QQ" else 1

    def c_from_int(self, k):
        if self.kind == "QQ":
            return Fraction(k)
        if self.kind == "Fp":
            return k % self.char
        return int(k)

    def c_add(self, a, b):
        r = a + b
        return r % self.char if self.kind == "Fp" else r

    def c_mul(self, a, b):
        r = a * b
        return r % self.char if self.kind == "Fp" else r

    def c_neg(self, a):
        return (-a) % self.char if self.kind == "Fp" else -a

    def c_inv(self, a):
        if self.kind == "QQ":
            return Fraction(1) / a
        if self.kind == "Fp":
            return pow(a, -1, self.char)
        if a in (1, -1):
            return a
        raise RingError(f"{a} is not invertible over ZZ")

    def c_is_unit(self, a):
        if self.kind == "ZZ":
            return a in (1, -1)
        return a != 0

    # -- structure ----------------------------------------------------------

    @property
    def n_vars(self):
        return len(self.variables)

    def base_label(self):
        if self.kind == "Fp":
            return ("Fp", self.char)
        return self.kind

    @property
    def is_euclidean(self):
        """True when Smith normal form applies: no quotient, and either no
        variables at all or a single variable over a field base."""
        if self.quotient is not None:
            return False
        if self.n_vars == 0:
            return True
        return self.n_vars == 1 and self.kind in ("QQ", "Fp")

    def _key(self):
        qc = None
        if self.quotient is not None:
            qc = tuple(sorted(self.quotient._c.items()))
        return (self.kind, self.char, self.variables, qc)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        label = {"QQ": "QQ", "ZZ": "ZZ", "Fp": f"F{self.char}"}[self.kind]
        if self.variables:
            label += "[" + ",".join(self.variables) + "]"
        if self.quotient is not None:
            label += f"/({self.quotient})"
        return f"Ring({label})"

    # -- element construction -----------------------------------------------

    def element(self, coeffs):
        """Build an element from an exponent-tuple dict, canonicalizing."""
        nv = self.n_vars
        clean = {}
        for exps, c in coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise RingError(f"bad exponent tuple {exps} for {self!r}")
            if self.kind == "Fp":
                c = c % self.char
            elif self.kind == "QQ" and not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                cur = clean.get(exps)
                if cur is None:
                    clean[exps] = c
                else:
                    s = self.c_add(cur, c)
                    if s:
                        clean[exps] = s
                    else:
                        del clean[exps]
        if self._qlist is not None:
            clean = self._reduce_mod_quotient(clean)
        return RingElement(self, clean)

    def _reduce_mod_quotient(self, coeffs):
        d = len(self._qlist) - 1
        if all(e[0] < d for e in coeffs):
            return coeffs
        top = max(e[0] for e in coeffs)
        dense = [self.c_zero()] * (top + 1)
        for (e,), c in coeffs.items():
            dense[e] = c
        for i in range(top, d - 1, -1):
            c = dense[i]
            if not c:
                continue
            dense[i] = self.c_zero()
            for j in range(d):
                dense[i - d + j] = self.c_add(dense[i - d + j],
                                              self.c_mul(self.c_neg(c), self._qlist[j]))
        return {(i,): c for i, c in enumerate(dense[:d]) if c}

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return self.from_int(1)

    def from_int(self, k):
        c = self.c_from_int(k)
        return RingElement(self, {(0,) * self.n_vars: c} if c else {})

    def gen(self, name=None):
        """The variable as an element (the only one, unless named)."""
        if name is None:
            if self.n_vars != 1:
                raise RingError("gen() without a name needs a univariate ring")
            name = self.variables[0]
        i = self._varindex.get(name)
        if i is None:
            raise RingError(f"unknown variable {name!r}")
        exps = tuple(1 if j == i else 0 for j in range(self.n_vars))
        return RingElement(self, {exps: self.c_one()})

    def coerce(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingError(f"element of {value.ring!r} used over {self!r}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction) and self.kind == "QQ":
            return RingElement(self, {(0,) * self.n_vars: value} if value else {})
        if isinstance(value, str):
            return self.parse(value)
        raise RingError(f"cannot coerce {value!r} into {self!r}")

    # -- parsing ------------------------------------------------------------

    _TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*/^()]))")

    def parse(self, text):
        """Parse a canonical polynomial string like '3*x^2*y - 1/2'."""
        if not isinstance(text, str):
            raise RingError(f"expected a string, got {type(text).__name__}")
        tokens = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise RingError(f"bad character at position {pos} in {text!r}")
            if m.group(1) is not None:
                tokens.append(("num", int(m.group(1))))
            elif m.group(2) is not None:
                tokens.append(("name", m.group(2)))
            else:
                tokens.append(("op", m.group(3)))
            pos = m.end()
        if not tokens:
            raise RingError("empty polynomial string")

        result = {}
        i = 0
        n = len(tokens)
        while i < n:
            sign = 1
            while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
                if tokens[i][1] == "-":
                    sign = -sign
                i += 1
            if i >= n:
                raise RingError(f"dangling sign in {text!r}")
            coeff = self.c_from_int(sign)
            exps = [0] * self.n_vars
            expect_factor = True
            while i < n:
                kind, val = tokens[i]
                if kind == "op" and val in "+-":
                    break
                if kind == "op" and val == "*":
                    if expect_factor:
                        raise RingError(f"misplaced '*' in {text!r}")
                    expect_factor = True
                    i += 1
                    continue
                if not expect_factor:
                    raise RingError(f"missing '*' before {val!r} in {text!r}")
                if kind == "num":
                    num = val
                    i += 1
                    if i < n and tokens[i] == ("op", "/"):
                        i += 1
                        if i >= n or tokens[i][0] != "num":
                            raise RingError(f"bad fraction in {text!r}")
                        den = tokens[i][1]
                        i += 1
                        if self.kind == "QQ":
                            coeff = self.c_mul(coeff, Fraction(num, den))
                        elif self.kind == "Fp":
                            coeff = self.c_mul(coeff, num * pow(den, -1, self.char))
                        else:
                            raise RingError("rational coefficient over ZZ")
                    else:
                        coeff = self.c_mul(coeff, self.c_from_int(num))
                elif kind == "name":
                    idx = self._varindex.get(val)
                    if idx is None:
                        raise RingError(f"unknown variable {val!r} in {text!r}")
                    power = 1
                    i += 1
                    if i < n and tokens[i] == ("op", "^"):
                        i += 1
                        if i >= n or tokens[i][0] != "num":
                            raise RingError(f"bad exponent in {text!r}")
                        power = tokens[i][1]
                        i += 1
                    exps[idx] += power
                else:
                    raise RingError(f"unexpected {val!r} in {text!r}")
                expect_factor = False
            if expect_factor:
                raise RingError(f"empty term in {text!r}")
            key = tuple(exps)
            cur = result.get(key, self.c_zero())
            s = self.c_add(cur, coeff)
            if s:
                result[key] = s
            elif key in result:
                del result[key]
        return self.element(result)


def _monomial_sort_key(exps):
    return (sum(exps), exps)


class RingElement:
    """A canonical-form element of a :class:`Ring`. Immutable by convention."""

    __slots__ = ("ring", "_c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self._c = coeffs

    # -- arithmetic ---------------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingError("mixed rings in arithmetic")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        out = dict(self._c)
        for e, c in other._c.items():
            s = ring.c_add(out.get(e, ring.c_zero()), c)
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return RingElement(ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        ring = self.ring
        return RingElement(ring, {e: ring.c_neg(c) for e, c in self._c.items()})

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        out = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = ring.c_add(out.get(e, ring.c_zero()), ring.c_mul(c1, c2))
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        if ring._qlist is not None:
            out = ring._reduce_mod_quotient(out)
        return RingElement(ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise RingError("powers must be nonnegative integers")
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return (isinstance(other, RingElement) and other.ring == self.ring
                and other._c == self._c)

    def __hash__(self):
        return hash((self.ring, frozenset(self._c.items())))

    # -- predicates and views -----------------------------------------------

    def is_zero(self):
        return not self._c

    def is_constant(self):
        zero = (0,) * self.ring.n_vars
        return all(e == zero for e in self._c)

    def constant_value(self):
        zero = (0,) * self.ring.n_vars
        return self._c.get(zero, self.ring.c_zero())

    def total_degree(self):
        """Total degree, with the convention that the zero element has -1."""
        if not self._c:
            return -1
        return max(sum(e) for e in self._c)

    def coefficient(self, exps):
        return self._c.get(tuple(exps), self.ring.c_zero())

    def monomials(self):
        return sorted(self._c, key=_monomial_sort_key, reverse=True)

    def is_unit(self):
        ring = self.ring
        if ring.quotient is None:
            return self.is_constant() and ring.c_is_unit(self.constant_value())
        return _quotient_is_unit(self)

    # -- formatting ---------------------------------------------------------

    def __str__(self):
        ring = self.ring
        if not self._c:
            return "0"
        parts = []
        for exps in self.monomials():
            c = self._c[exps]
            if ring.kind == "Fp":
                negative = False
                mag = c
            else:
                negative = c < 0
                mag = -c if negative else c
            factors = []
            for var, e in zip(ring.variables, exps):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append(f"{var}^{e}")
            if not factors:
                body = str(mag)
            elif mag == ring.c_one():
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            parts.append(("-" if negative else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += (" - " if sign == "-" else " + ") + body
        return text

    def __repr__(self):
        return f"<{self} over {self.ring!r}>"


# -- univariate helpers ------------------------------------------------------


def _dense_coeffs(elem):
    d = elem.total_degree()
    ring = elem.ring
    out = [ring.c_zero()] * (d + 1)
    for (e,), c in elem._c.items():
        out[e] = c
    return out


def _from_dense(ring, coeffs):
    return ring.element({(i,): c for i, c in enumerate(coeffs) if c})


def elem_divmod(a, b):
    """Euclidean division over a Euclidean ring: a = q*b + r.

    Over a field base with one variable this is polynomial division; with no
    variables it is division of constants (integer divmod over ZZ).
    """
    ring = a.ring
    if ring != b.ring:
        raise RingError("mixed rings in division")
    if not ring.is_euclidean:
        raise RingError(f"{ring!r} does not support Euclidean division")
    if b.is_zero():
        raise ZeroDivisionError("division by zero element")
    if ring.n_vars == 0:
        ca, cb = a.constant_value(), b.constant_value()
        if ring.kind == "ZZ":
            q, r = divmod(ca, cb)
            return ring.from_int(q), ring.from_int(r)
        q = ring.c_mul(ca, ring.c_inv(cb))
        return ring.element({(): q} if q else {}), ring.zero()
    num = _dense_coeffs(a)
    den = _dense_coeffs(b)
    db = len(den) - 1
    inv_lead = ring.c_inv(den[-1])
    quo = [ring.c_zero()] * max(0, len(num) - db)
    while len(num) - 1 >= db and any(c for c in num):
        da = len(num) - 1
        if not num[-1]:
            num.pop()
            continue
        if da < db:
            break
        factor = ring.c_mul(num[-1], inv_lead)
        quo[da - db] = factor
        for j in range(db + 1):
            num[da - db + j] = ring.c_add(num[da - db + j],
                                          ring.c_mul(ring.c_neg(factor), den[j]))
        num.pop()
    return _from_dense(ring, quo), _from_dense(ring, num)


def elem_norm(elem):
    """Euclidean size: None for zero, degree for polynomials, |n| over ZZ."""
    if elem.is_zero():
        return None
    ring = elem.ring
    if ring.n_vars == 0:
        if ring.kind == "ZZ":
            return abs(elem.constant_value())
        return 0
    return elem.total_degree()


def _field_xgcd(a, b):
    """Extended gcd for univariate polynomials over a field base.

    Returns (g, s, t) with s*a + t*b = g. Inputs are RingElements of the same
    univariate quotient-free ring.
    """
    ring = a.ring
    r0, r1 = a, b
    s0, s1 = ring.one(), ring.zero()
    t0, t1 = ring.zero(), ring.one()
    while not r1.is_zero():
        q, r = elem_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def _quotient_is_unit(elem):
    ring = elem.ring
    if elem.is_zero():
        return False
    if ring.kind in ("QQ", "Fp"):
        plain = Ring(ring.base_label(), ring.variables)
        u = plain.element(dict(elem._c))
        g, _, _ = _field_xgcd(u, ring.quotient)
        return g.total_degree() == 0
    # ZZ base: invert over QQ, then demand integrality of the inverse.
    qring = Ring("QQ", ring.variables)
    u = qring.element({e: Fraction(c) for e, c in elem._c.items()})
    q = qring.element({e: Fraction(c) for e, c in ring.quotient._c.items()})
    g, s, _ = _field_xgcd(u, q)
    if g.total_degree() != 0:
        return False
    ginv = Fraction(1) / g.constant_value()
    inv = s * qring.element({(0,): ginv})
    _, inv = elem_divmod(inv, q)
    return all(c.denominator == 1 for c in inv._c.values())


def ring_join(left, right):
    """Glue two quotient-free polynomial rings with the same base and
    disjoint variables into one ring.

    Returns (joined, embed_left, embed_right) where the embeds map elements
    by padding exponents.
    """
    if left.quotient is not None or right.quotient is not None:
        raise RingError("cannot join quotient rings")
    if left.base_label() != right.base_label():
        raise RingError("coefficient base mismatch")
    shared = set(left.variables) & set(right.variables)
    if shared:
        raise RingError(f"variable name collision: {sorted(shared)}")
    joined = Ring(left.base_label(), left.variables + right.variables)
    nl, nr = left.n_vars, right.n_vars

    def embed_left(elem):
        if elem.ring != left:
            raise RingError("element does not belong to the left ring")
        return RingElement(joined, {e + (0,) * nr: c for e, c in elem._c.items()})

    def embed_right(elem):
        if elem.ring != right:
            raise RingError("element does not belong to the right ring")
        return RingElement(joined, {(0,) * nl + e: c for e, c in elem._c.items()})

    return joined, embed_left, embed_right
