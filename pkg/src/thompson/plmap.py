"""Thompson's group F as piecewise-linear homeomorphisms of the real line.

The generator ``x_k`` acts as the map ``f_k``: identity for ``t <= k``, slope 2
on ``[k, k+1]`` and translation by one above ``k+1``.  Maps act on the right,
so the word ``x_i x_j`` is the map "apply f_i, then f_j".

Every element is identity on ``(-inf, 0]``, has power-of-two slopes and dyadic
breakpoints, and is a translation by an integer near ``+inf``.  A map is stored
canonically (only genuine slope changes, coordinates scaled by a minimal common
power of two), so structural equality is group equality and maps can be used
directly as dictionary keys.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple, Union

from thompson.words import Letter

Number = Union[int, Fraction, "Dyadic"]


@functools.total_ordering
class Dyadic:
    """Exact rational ``m / 2**e`` kept with ``e == 0`` or ``m`` odd."""

    __slots__ = ("m", "e")

    def __init__(self, m: int, e: int = 0):
        if e < 0:
            m <<= -e
            e = 0
        if m == 0:
            e = 0
        elif e:
            tz = (m & -m).bit_length() - 1
            if tz:
                shift = min(tz, e)
                m >>= shift
                e -= shift
        self.m = m
        self.e = e

    @classmethod
    def coerce(cls, value: Number) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value)
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    def _align(self, other: "Dyadic") -> Tuple[int, int, int]:
        e = max(self.e, other.e)
        return self.m << (e - self.e), other.m << (e - other.e), e

    def __add__(self, other: Number) -> "Dyadic":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Dyadic":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, e = self._align(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other: Number) -> "Dyadic":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Number) -> "Dyadic":
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return Dyadic(self.m * other.m, self.e + other.e)

    __rmul__ = __mul__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.m), self.e)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return self.m == other.m and self.e == other.e
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other: Number) -> bool:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __ceil__(self) -> int:
        return -((-self.m) >> self.e)

    def __floor__(self) -> int:
        return self.m >> self.e

    def to_fraction(self) -> Fraction:
        return Fraction(self.m, 1 << self.e)

    def __repr__(self) -> str:
        return f"Dyadic({self.m}, {self.e})"

    def __str__(self) -> str:
        return str(self.m) if self.e == 0 else f"{self.m}/{1 << self.e}"


def _coerce_or_none(value: object) -> Optional[Dyadic]:
    try:
        return Dyadic.coerce(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        return None


def dyadic_arith(a: Number, b: Number, op: str):
    """Exact ``add``/``sub``/``mul`` returning a Dyadic, or ``cmp`` returning -1, 0, 1."""
    a, b = Dyadic.coerce(a), Dyadic.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "cmp":
        return (a > b) - (a < b)
    raise ValueError(f"unknown operation {op!r}")


class Breakpoint(NamedTuple):
    a: Dyadic
    b: Dyadic


class UnboundedSupportError(ValueError):
    """Raised by :func:`support` for maps that translate near +infinity."""


class PLMap:
    """Canonical piecewise-linear homeomorphism in the model of F.

    Internally node ``i`` is ``(xs[i] / 2**exp, ys[i] / 2**exp)`` with ``exp``
    minimal.  Build from real coordinates with ``PLMap(nodes, tail)``.
    """

    __slots__ = ("tail", "_exp", "_xs", "_ys", "_hash")

    def __init__(self, nodes: Iterable[Tuple[Number, Number]] = (), tail: int = 0, *, check: bool = True):
        pairs = [(Dyadic.coerce(a), Dyadic.coerce(b)) for a, b in nodes]
        exp = max((max(a.e, b.e) for a, b in pairs), default=0)
        xs = [a.m << (exp - a.e) for a, _ in pairs]
        ys = [b.m << (exp - b.e) for _, b in pairs]
        if check:
            _validate(xs, ys, exp, tail)
        xs, ys = _drop_collinear(xs, ys)
        self._set(int(tail), *_reduce_scale(xs, ys, exp))

    @classmethod
    def _raw(cls, tail: int, exp: int, xs: tuple, ys: tuple) -> "PLMap":
        obj = cls.__new__(cls)
        obj._set(tail, exp, xs, ys)
        return obj

    def _set(self, tail: int, exp: int, xs: tuple, ys: tuple) -> None:
        self.tail = tail
        self._exp = exp
        self._xs = xs
        self._ys = ys
        self._hash = hash((tail, exp, xs, ys))

    @property
    def nodes(self) -> Tuple[Breakpoint, ...]:
        e = self._exp
        return tuple(Breakpoint(Dyadic(x, e), Dyadic(y, e)) for x, y in zip(self._xs, self._ys))

    def key(self) -> tuple:
        """Flat canonical serialization: tail, then ``(m, e)`` of every coordinate."""
        out: list = [self.tail]
        for a, b in self.nodes:
            out.extend(((a.m, a.e), (b.m, b.e)))
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLMap):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.tail == other.tail
            and self._exp == other._exp
            and self._xs == other._xs
            and self._ys == other._ys
        )

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __invert__(self) -> "PLMap":
        return invert(self)

    def __call__(self, t: Number) -> Dyadic:
        return evaluate(self, t)

    def __repr__(self) -> str:
        nodes = ", ".join(f"({a}, {b})" for a, b in self.nodes)
        return f"PLMap([{nodes}], tail={self.tail})"

    def to_json(self) -> dict:
        return {
            "tail": self.tail,
            "nodes": [{"a": [a.m, a.e], "b": [b.m, b.e]} for a, b in self.nodes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLMap":
        nodes = [(Dyadic(*n["a"]), Dyadic(*n["b"])) for n in data["nodes"]]
        return cls(nodes, data["tail"])


def _is_pow2_ratio(num: int, den: int) -> bool:
    if num <= 0 or den <= 0:
        return False
    if num >= den:
        q, r = divmod(num, den)
    else:
        q, r = divmod(den, num)
    return r == 0 and q & (q - 1) == 0


def _validate(xs: Sequence[int], ys: Sequence[int], exp: int, tail: int) -> None:
    if not xs:
        if tail:
            raise ValueError("a map without breakpoints must have tail offset 0")
        return
    if xs[0] < 0:
        raise ValueError("maps must be the identity on (-inf, 0]")
    if xs[0] != ys[0]:
        raise ValueError("first breakpoint must lie on the diagonal")
    if ys[-1] - xs[-1] != tail << exp:
        raise ValueError("last breakpoint must lie on the line t + tail")
    for i in range(1, len(xs)):
        dx, dy = xs[i] - xs[i - 1], ys[i] - ys[i - 1]
        if dx <= 0 or dy <= 0:
            raise ValueError("breakpoints must be strictly increasing in both coordinates")
        if not _is_pow2_ratio(dy, dx):
            raise ValueError(f"slope {Fraction(dy, dx)} is not a power of two")


def _drop_collinear(xs: Sequence[int], ys: Sequence[int]) -> Tuple[list, list]:
    """Remove nodes where the slope does not change; outer pieces have slope 1."""
    n = len(xs)
    out_x: list = []
    out_y: list = []
    for i in range(n):
        x, y = xs[i], ys[i]
        if out_x:
            ldx, ldy = x - out_x[-1], y - out_y[-1]
        else:
            ldx = ldy = 1
        if i + 1 < n:
            rdx, rdy = xs[i + 1] - x, ys[i + 1] - y
        else:
            rdx = rdy = 1
        if ldy * rdx != rdy * ldx:
            out_x.append(x)
            out_y.append(y)
    return out_x, out_y


def _reduce_scale(xs: list, ys: list, exp: int) -> Tuple[int, tuple, tuple]:
    acc = 0
    for v in xs:
        acc |= v
    for v in ys:
        acc |= v
    if acc == 0:
        return 0, tuple(xs), tuple(ys)
    shift = min((acc & -acc).bit_length() - 1, exp)
    if shift:
        xs = [v >> shift for v in xs]
        ys = [v >> shift for v in ys]
    return exp - shift, tuple(xs), tuple(ys)


def _max_slope_exp(xs: Sequence[int], ys: Sequence[int]) -> int:
    s = 0
    for i in range(1, len(xs)):
        d = abs((ys[i] - ys[i - 1]).bit_length() - (xs[i] - xs[i - 1]).bit_length())
        if d > s:
            s = d
    return s


IDENTITY = PLMap._raw(0, 0, (), ())


def identity() -> PLMap:
    return IDENTITY


@functools.lru_cache(maxsize=256)
def generator(k: int) -> PLMap:
    if k < 0:
        raise ValueError(f"generator index must be nonnegative, got {k}")
    return PLMap._raw(1, 0, (k, k + 1), (k, k + 2))


def letter_map(lt: Letter) -> PLMap:
    g = generator(lt.index)
    return g if lt.sign > 0 else invert(g)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The map ``t -> g(f(t))``: the group product ``f * g`` under the right action."""
    if not f._xs:
        return g
    if not g._xs:
        return f
    e = max(f._exp, g._exp)
    w = e + max(_max_slope_exp(f._xs, f._ys), _max_slope_exp(g._xs, g._ys))
    sf, sg = w - f._exp, w - g._exp
    fx = [v << sf for v in f._xs]
    fy = [v << sf for v in f._ys]
    gx = [v << sg for v in g._xs]
    gy = [v << sg for v in g._ys]
    ftail = f.tail << w
    gtail = g.tail << w
    nf, ng = len(fy), len(gx)
    # Sweep the middle line (image of f = domain of g) through both node sets.
    out_x: list = []
    out_z: list = []
    i = j = 0
    while i < nf or j < ng:
        if j == ng or (i < nf and fy[i] < gx[j]):
            y = fy[i]
            x = fx[i]
            if j == 0:
                z = y
            elif j == ng:
                z = y + gtail
            else:
                z = gy[j - 1] + (y - gx[j - 1]) * (gy[j] - gy[j - 1]) // (gx[j] - gx[j - 1])
            i += 1
        elif i == nf or gx[j] < fy[i]:
            y = gx[j]
            z = gy[j]
            if i == 0:
                x = y
            elif i == nf:
                x = y - ftail
            else:
                x = fx[i - 1] + (y - fy[i - 1]) * (fx[i] - fx[i - 1]) // (fy[i] - fy[i - 1])
            j += 1
        else:
            x, z = fx[i], gy[j]
            i += 1
            j += 1
        out_x.append(x)
        out_z.append(z)
    xs, zs = _drop_collinear(out_x, out_z)
    return PLMap._raw(f.tail + g.tail, *_reduce_scale(xs, zs, w))


def invert(f: PLMap) -> PLMap:
    return PLMap._raw(-f.tail, f._exp, f._ys, f._xs)


def evaluate(f: PLMap, t: Number) -> Dyadic:
    t = Dyadic.coerce(t)
    if not f._xs:
        return t
    # headroom for the slope factor keeps the interpolation exact
    w = max(f._exp, t.e) + _max_slope_exp(f._xs, f._ys)
    s = w - f._exp
    tm = t.m << (w - t.e)
    xs = [v << s for v in f._xs]
    ys = [v << s for v in f._ys]
    if tm <= xs[0]:
        return t
    if tm >= xs[-1]:
        return t + f.tail
    k = 1
    while xs[k] < tm:
        k += 1
    val = ys[k - 1] + (tm - xs[k - 1]) * (ys[k] - ys[k - 1]) // (xs[k] - xs[k - 1])
    return Dyadic(val, w)


def _slope(dx: int, dy: int) -> Dyadic:
    if dy >= dx:
        return Dyadic(dy // dx)
    return Dyadic(1, (dx // dy).bit_length() - 1)


def derivatives(f: PLMap, a: Number) -> Tuple[Dyadic, Dyadic]:
    """Left and right derivative of ``f`` at ``a``."""
    a = Dyadic.coerce(a)
    xs, ys = f._xs, f._ys
    one = Dyadic(1)
    if not xs:
        return one, one
    w = max(f._exp, a.e)
    s = w - f._exp
    am = a.m << (w - a.e)
    xs = [v << s for v in xs]
    ys = [v << s for v in ys]
    n = len(xs)

    def piece(k: int) -> Dyadic:
        # piece k lies between node k-1 and node k; pieces 0 and n are unbounded
        if k == 0 or k == n:
            return one
        return _slope(xs[k] - xs[k - 1], ys[k] - ys[k - 1])

    k = 0
    while k < n and xs[k] < am:
        k += 1
    if k < n and xs[k] == am:
        return piece(k), piece(k + 1)
    return piece(k), piece(k)


def breaking_points(f: PLMap) -> Tuple[Breakpoint, ...]:
    return f.nodes


def from_word(w: Iterable[Letter]) -> PLMap:
    result = IDENTITY
    for lt in w:
        result = compose(result, letter_map(lt))
    return result


def equals(f: PLMap, g: PLMap) -> bool:
    return f == g


def is_identity(f: PLMap) -> bool:
    return not f._xs


def eventual_translation(f: PLMap) -> int:
    return f.tail


def support(f: PLMap) -> Optional[Tuple[Dyadic, Dyadic]]:
    """Smallest closed interval outside which ``f`` is the identity, or None for the identity."""
    if f.tail:
        raise UnboundedSupportError(f"map translates by {f.tail} near +infinity; support is unbounded")
    if not f._xs:
        return None
    nodes = f.nodes
    return nodes[0].a, nodes[-1].a


def commutator(f: PLMap, g: PLMap) -> PLMap:
    """``f^-1 g^-1 f g`` in word order."""
    return compose(compose(invert(f), invert(g)), compose(f, g))
