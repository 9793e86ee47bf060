"""Exact base fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface; elements are plain Python ints (F_p) or Fractions (Q)."""

    kind: str
    characteristic: int

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.characteristic == other.characteristic
        )

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def to_json(self):
        return {"kind": self.kind, "characteristic": self.characteristic}

    @staticmethod
    def from_json(data) -> "Field":
        if data["kind"] == "rationals":
            return Rationals()
        return PrimeField(int(data["characteristic"]))

    def div(self, a, b):
        return self.mul(a, self.inv(b))


class PrimeField(Field):
    kind = "prime-field"

    def __init__(self, p: int):
        if not (is_prime(p) and p < 2**31):
            raise FieldError(f"characteristic {p} is not a prime below 2^31")
        self.characteristic = p
        self.p = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"F{self.p}"

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator of {x} vanishes in F{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def axpy(self, v: dict, c, w: dict) -> None:
        """In place ``v += c * w`` on sparse vectors, dropping zeros."""
        p = self.p
        for k, x in w.items():
            y = (v.get(k, 0) + c * x) % p
            if y:
                v[k] = y
            else:
                v.pop(k, None)

    def scale(self, v: dict, c) -> dict:
        p = self.p
        return {k: x * c % p for k, x in v.items()}

    def random_element(self, rng, nonzero=True):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.p)

    def fmt(self, a) -> str:
        # symmetric representative reads better: p-1 prints as -1
        return str(a - self.p if a > self.p // 2 else a)

    def encode(self, a):
        return a

    def decode(self, x):
        return int(x) % self.p


class Rationals(Field):
    kind = "rationals"
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "Q"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def axpy(self, v: dict, c, w: dict) -> None:
        for k, x in w.items():
            y = v.get(k, 0) + c * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)

    def scale(self, v: dict, c) -> dict:
        return {k: x * c for k, x in v.items()}

    def random_element(self, rng, nonzero=True):
        while True:
            x = Fraction(rng.randint(-9, 9))
            if x or not nonzero:
                return x

    def fmt(self, a) -> str:
        return str(a)

    def encode(self, a):
        return str(a)

    def decode(self, x):
        return Fraction(x)


def make_field(kind: str, characteristic: int = 0) -> Field:
    if kind in ("Q", "rationals") or characteristic == 0:
        return Rationals()
    return PrimeField(characteristic)
