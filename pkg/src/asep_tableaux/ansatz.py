"""Four-index transfer matrices D, E with boundary vectors W, V (u = 1).

Indices ``(i, j, k, l)`` are read as: ``(i, k)`` the "row" of the matrix and
``(j, l)`` the "column".  ``i``/``j`` count rows of the growing tableau that
are indexed by delta and ``k``/``l`` those indexed by alpha or gamma.  The
row vector W selects ``(i, k) = (0, 0)`` and V is all ones, so ``W X V`` is
the generating function of tableaux of type X.

Words are strings over ``"DE"`` applied left to right.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .errors import DomainError
from .exactmath import ONE, ZERO, GfPoly, a, b, d, g, q, sum_of_products

RowVec = dict  # (j, l) -> GfPoly


def as_word(word: str | Sequence[int]) -> str:
    """Accept a D/E string or a 0/1 state (1 -> D, 0 -> E)."""
    if isinstance(word, str):
        if set(word) <= {"D", "E"}:
            return word
        if set(word) <= {"0", "1", "•", "∘"}:
            return "".join("D" if ch in "1•" else "E" for ch in word)
        raise DomainError(f"bad word {word!r}")
    return "".join("D" if x else "E" for x in word)


def word_type(word: str) -> tuple:
    return tuple(1 if ch == "D" else 0 for ch in as_word(word))


def all_words(length: int) -> Iterator[str]:
    for letters in product("DE", repeat=length):
        yield "".join(letters)


@lru_cache(maxsize=None)
def _q_pow(k: int) -> GfPoly:
    return q**k


def lam(n: int) -> GfPoly:
    """lambda_0 = 1, lambda_n = alpha beta - gamma delta q^(n-1)."""
    if n < 0:
        raise DomainError("lambda index must be non-negative")
    if n == 0:
        return ONE
    return a * b - g * d * _q_pow(n - 1)


@lru_cache(maxsize=None)
def transfer_entry(letter: str, i: int, j: int, k: int, l: int) -> GfPoly:
    """Entry ``letter_{i,j,k,l}`` of the transfer matrix D or E."""
    if i < 0 or j < 0 or k < 0 or l < 0:
        return ZERO
    if j < i or l > k + 1:
        return ZERO
    if letter == "D":
        if j == i + 1 and k == 0 and l == 0:
            return d * _q_pow(i)
        if j == i and k == 0 and l == 1:
            return a * _q_pow(i)
        return (
            d * (transfer_entry("D", i, j - 1, k - 1, l) + transfer_entry("E", i, j - 1, k - 1, l))
            + transfer_entry("D", i, j, k - 1, l - 1)
        )
    if letter == "E":
        if j == i and k == 0 and l == 0:
            return b * _q_pow(i)
        if j == i and k == 0 and l == 1:
            return g * _q_pow(i)
        return (
            b * (transfer_entry("D", i, j, k - 1, l) + transfer_entry("E", i, j, k - 1, l))
            + q * transfer_entry("E", i, j, k - 1, l - 1)
        )
    raise DomainError(f"letter must be 'D' or 'E', got {letter!r}")


def _collect(pairs: dict) -> dict:
    out = {}
    for key, prods in pairs.items():
        p = sum_of_products(prods)
        if p:
            out[key] = p
    return out


def apply_letter(vec: RowVec, letter: str) -> RowVec:
    """Row vector times one letter matrix."""
    pairs: dict = {}
    for (i, k), coeff in vec.items():
        # one new column raises j by at most k + 1 and l by at most 1
        for j in range(i, i + k + 2):
            for l in range(0, k + 2):
                e = transfer_entry(letter, i, j, k, l)
                if e:
                    pairs.setdefault((j, l), []).append((coeff, e))
    return _collect(pairs)


def apply_word(vec: RowVec, word: str) -> RowVec:
    for letter in word:
        vec = apply_letter(vec, letter)
    return vec


@lru_cache(maxsize=None)
def _suffix_row(word: str, i: int, k: int) -> tuple:
    # row (i, k) of the word's tensor, expanded on the first letter so that
    # words sharing a suffix share the work
    if not word:
        return (((i, k), ONE),)
    first = word[0]
    pairs: dict = {}
    for j in range(i, i + k + 2):
        for l in range(0, k + 2):
            e = transfer_entry(first, i, j, k, l)
            if not e:
                continue
            for key, p in _suffix_row(word[1:], j, l):
                pairs.setdefault(key, []).append((e, p))
    return tuple(sorted(_collect(pairs).items()))


class TransferTensor:
    """The product of letter matrices along a word, evaluated lazily by rows."""

    def __init__(self, word: str):
        self.word = as_word(word)
        self._rows: dict = {}

    def __len__(self) -> int:
        return len(self.word)

    def row(self, i: int, k: int) -> RowVec:
        key = (i, k)
        r = self._rows.get(key)
        if r is None:
            r = {} if i < 0 or k < 0 else dict(_suffix_row(self.word, i, k))
            self._rows[key] = r
        return r

    def entry(self, i: int, j: int, k: int, l: int) -> GfPoly:
        if min(i, j, k, l) < 0:
            return ZERO
        return self.row(i, k).get((j, l), ZERO)


def word_tensor(word: str | Sequence[int]) -> TransferTensor:
    return TransferTensor(as_word(word))


@lru_cache(maxsize=None)
def _wx_row(word: str) -> tuple:
    if not word:
        return (((0, 0), ONE),)
    prev = dict(_wx_row(word[:-1]))
    return tuple(sorted(apply_letter(prev, word[-1]).items()))


def wx_row(word: str | Sequence[int]) -> RowVec:
    """The row vector W X as a dict (j, l) -> polynomial."""
    return dict(_wx_row(as_word(word)))


def wx(word, j: int, l: int) -> GfPoly:
    if j < 0 or l < 0:
        return ZERO
    return wx_row(word).get((j, l), ZERO)


@lru_cache(maxsize=None)
def _wxv(word: str) -> GfPoly:
    total = ZERO
    for _, p in _wx_row(word):
        total = total + p
    return total


def wxv(word) -> GfPoly:
    """W X V: generating function (u = 1) of tableaux of type X."""
    return _wxv(as_word(word))


@lru_cache(maxsize=None)
def _pf_row(n: int) -> tuple:
    if n == 0:
        return (((0, 0), ONE),)
    prev = dict(_pf_row(n - 1))
    dv = apply_letter(prev, "D")
    ev = apply_letter(prev, "E")
    for key, p in ev.items():
        dv[key] = dv.get(key, ZERO) + p
    return tuple(sorted((k, p) for k, p in dv.items() if p))


def partition_function(n: int) -> GfPoly:
    """Z_n = W (D + E)^n V at u = 1."""
    if n < 0:
        raise DomainError("n must be non-negative")
    total = ZERO
    for _, p in _pf_row(n):
        total = total + p
    return total


# -- verification sweeps ----------------------------------------------------

def _ok(family: str, max_len: int) -> dict:
    return {"family": family, "max_len": max_len, "status": "ok"}


def _fail(family: str, lhs: GfPoly, rhs: GfPoly, **where) -> dict:
    out = {"status": "fail", "family": family}
    out.update({k: v for k, v in where.items()})
    out["lhs"] = lhs.to_text()
    out["rhs"] = rhs.to_text()
    return out


def _words_upto(n: int) -> Iterator[str]:
    for length in range(n + 1):
        yield from all_words(length)


def check_family_I(max_len: int) -> dict:
    for s in range(max_len + 1):
        for xl in range(s + 1):
            for X in all_words(xl):
                for Y in all_words(s - xl):
                    lhs = wxv(X + "DE" + Y) - q * wxv(X + "ED" + Y)
                    rhs = lam(s + 2) * (wxv(X + "D" + Y) + wxv(X + "E" + Y))
                    if lhs != rhs:
                        return _fail("I", lhs, rhs, X=X, Y=Y)
    return _ok("I", max_len)


def check_family_II(max_len: int) -> dict:
    for X in _words_upto(max_len):
        lhs = b * wxv(X + "D") - d * wxv(X + "E")
        rhs = lam(len(X) + 1) * wxv(X)
        if lhs != rhs:
            return _fail("II", lhs, rhs, X=X)
    return _ok("II", max_len)


def check_family_III(max_len: int) -> dict:
    for Y in _words_upto(max_len):
        lhs = a * wxv("E" + Y) - g * wxv("D" + Y)
        rhs = lam(len(Y) + 1) * wxv(Y)
        if lhs != rhs:
            return _fail("III", lhs, rhs, Y=Y)
    return _ok("III", max_len)


_FAMILIES = {"I": check_family_I, "II": check_family_II, "III": check_family_III}


def verify_gma(max_len: int, families: Sequence[str] = ("I", "II", "III")) -> list[dict]:
    """Check the three word-indexed relation families as polynomial identities.

    Family I runs over word pairs with |X| + |Y| <= max_len, families II and
    III over single words of length <= max_len.  Returns one report per family.
    """
    if max_len < 0 or max_len > 5:
        raise DomainError("max_len must be between 0 and 5")
    reports = []
    for fam in families:
        if fam not in _FAMILIES:
            raise DomainError(f"unknown family {fam!r}")
        reports.append(_FAMILIES[fam](max_len))
    return reports


def verify_decrease(max_len: int, max_index: int) -> dict:
    """Check Y_{ijkl} = q^|Y| Y_{i-1,j-1,k,l} for 1 <= |Y| <= max_len, i >= 1."""
    for length in range(1, max_len + 1):
        qpow = _q_pow(length)
        for Y in all_words(length):
            t = TransferTensor(Y)
            for i in range(1, max_index + 1):
                for k in range(max_index + 1):
                    for j in range(max_index + 1):
                        for l in range(max_index + 1):
                            lhs = t.entry(i, j, k, l)
                            rhs = qpow * t.entry(i - 1, j - 1, k, l)
                            if lhs != rhs:
                                return _fail("decrease", lhs, rhs, Y=Y, i=i, j=j, k=k, l=l)
    return {"family": "decrease", "max_len": max_len, "max_index": max_index, "status": "ok"}


def _identity_span(x_len: int) -> range:
    # words here have length <= |X| + 2, so supports satisfy j + l <= |X| + 2;
    # one extra step covers the j - 1 / l - 1 shifted terms
    return range(x_len + 4)


def verify_identities(max_len: int) -> list[dict]:
    """Check the two entrywise identities behind families I and II for |X| <= max_len."""
    if max_len < 0 or max_len > 5:
        raise DomainError("max_len must be between 0 and 5")
    ab, gd = a * b, g * d
    fail1 = fail2 = None
    for X in _words_upto(max_len):
        n = len(X)
        wxde, wxed = wx_row(X + "DE"), wx_row(X + "ED")
        wxd, wxe, wx0 = wx_row(X + "D"), wx_row(X + "E"), wx_row(X)

        def c(j, l):
            return wxd.get((j, l), ZERO) + wxe.get((j, l), ZERO) if j >= 0 and l >= 0 else ZERO

        def at(vec, j, l):
            return vec.get((j, l), ZERO) if j >= 0 and l >= 0 else ZERO

        for j in _identity_span(n):
            for l in _identity_span(n):
                if fail1 is None:
                    lhs = at(wxde, j, l)
                    rhs = q * at(wxed, j, l) + ab * c(j, l) - gd * _q_pow(n + 1) * c(j - 1, l)
                    if lhs != rhs:
                        fail1 = _fail("identity1", lhs, rhs, X=X, j=j, l=l)
                if fail2 is None:
                    lhs = b * at(wxd, j, l)
                    rhs = (
                        d * at(wxe, j - 1, l)
                        + ab * at(wx0, j, l - 1)
                        - gd * _q_pow(n) * at(wx0, j - 1, l - 1)
                    )
                    if lhs != rhs:
                        fail2 = _fail("identity2", lhs, rhs, X=X, j=j, l=l)
    return [
        fail1 or {"family": "identity1", "max_len": max_len, "status": "ok"},
        fail2 or {"family": "identity2", "max_len": max_len, "status": "ok"},
    ]
