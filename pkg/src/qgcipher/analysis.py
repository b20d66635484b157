"""Randomization measurements.

The yardstick is the mean-subtracted, unnormalized autocorrelation
R(k) = sum_i (x_i - mu)(x_{i+k} - mu); a well-scrambled stream has |R(k)|
collapsing toward zero for every positive lag.  The normalized ratio
R(k)/R(0) is exposed alongside for threshold tests, together with symbol
histograms and empirical Shannon entropy.

run_case() drives the built-in demonstration inputs -- highly redundant
and random text samples -- through the full encryptor and reports both
sides.  Case numbering skips 4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import LATIN41, SymbolStream, encrypt, text_to_symbols
from .errors import EmptyStream, UnknownCase
from .keying import HiddenKey, KeyFrame
from .qgdb import NetworkProfile


@dataclass(frozen=True)
class AutocorrelationReport:
    lags: np.ndarray
    values: np.ndarray       # R(0)..R(K), unnormalized
    normalized: np.ndarray   # R(k)/R(0), zeros when R(0) == 0
    mean: float
    length: int


def autocorrelation(stream: SymbolStream, max_lag: int) -> AutocorrelationReport:
    """Mean-subtracted, unnormalized autocorrelation up to max_lag.

    Lags past length-1 are truncated.  R(0) is the sum of squared
    deviations, so it is nonnegative and zero exactly for constant streams.
    """
    n = len(stream)
    if n == 0:
        raise EmptyStream("cannot autocorrelate an empty stream")
    if max_lag < 0:
        raise ValueError(f"max_lag must be >= 0, got {max_lag}")
    k_max = min(max_lag, n - 1)
    x = np.asarray(stream.symbols, dtype=np.float64)
    mu = float(x.mean())
    d = x - mu
    values = np.empty(k_max + 1)
    for k in range(k_max + 1):
        values[k] = np.dot(d[:n - k], d[k:])
    r0 = values[0]
    normalized = values / r0 if r0 > 0 else np.zeros_like(values)
    return AutocorrelationReport(lags=np.arange(k_max + 1), values=values,
                                 normalized=normalized, mean=mu, length=n)


def entropy(stream: SymbolStream) -> float:
    """Empirical Shannon entropy in bits."""
    n = len(stream)
    if n == 0:
        raise EmptyStream("cannot take the entropy of an empty stream")
    counts = np.bincount(np.asarray(stream.symbols))
    p = counts[counts > 0] / n
    return float(-(p * np.log2(p)).sum())


def histogram(stream: SymbolStream) -> dict:
    """Counts per symbol 1..order (zeros included); counts sum to the length."""
    counts = np.bincount(np.asarray(stream.symbols, dtype=np.int64),
                         minlength=stream.order + 1)
    return {sym: int(counts[sym]) for sym in range(1, stream.order + 1)}


# --- demonstration cases -------------------------------------------------------

CASE_INPUTS = {
    # Two-valued: the letter K followed by a space, eleven times (the
    # trailing space is part of the input).
    1: "K " * 11,
    # Short plain text with repeated letters.
    2: "OOM NAMAH SHIVAYA",
    # Random-looking letters.
    3: "E M V C W J F A Z",
    # Long English text (the golden-goose fable opening), 283 characters.
    5: ("ONE DAY A COUNTRYMAN GOING TO THE NEST OF HIS GOOSE FOUND THERE "
        "AN EGG ALL YELLOW AND GLITTERING WHEN HE TOOK IT UP IT WAS AS "
        "HEAVY AS LEAD AND HE WAS GOING TO THROW IT AWAY BECAUSE HE "
        "THOUGHT A TRICK HAD BEEN PLAYED UPON HIM. BUT HE TOOK IT HOME "
        "ON SECOND THOUGHTS AND SOON FOUND TO"),
    # Long constant text: a single letter repeated.
    6: "E" * 300,
}


@dataclass(frozen=True)
class CaseReport:
    case_id: int
    input_text: str
    input_stream: SymbolStream
    output_stream: SymbolStream
    input_autocorrelation: AutocorrelationReport
    output_autocorrelation: AutocorrelationReport
    input_entropy: float
    output_entropy: float
    input_distinct: int
    output_distinct: int

    def to_csv(self) -> str:
        """Plot-ready CSV: one row per lag, raw (input) and enc (output)
        autocorrelation, both unnormalized and normalized."""
        lines = ["lag,raw_R,raw_norm,enc_R,enc_norm"]
        raw, enc = self.input_autocorrelation, self.output_autocorrelation
        for i, lag in enumerate(raw.lags):
            lines.append(f"{lag},{raw.values[i]:.10g},{raw.normalized[i]:.10g},"
                         f"{enc.values[i]:.10g},{enc.normalized[i]:.10g}")
        return "\n".join(lines) + "\n"


def analyze_text(text: str, profile: NetworkProfile, frame: KeyFrame,
                 key: HiddenKey, alphabet=LATIN41, max_lag: int = 20,
                 case_id: int = 0) -> CaseReport:
    """Encrypt a text and measure both sides (case_id 0 for ad-hoc input)."""
    plain = text_to_symbols(text, alphabet)
    cipher = encrypt(profile, frame, key, plain)
    return CaseReport(
        case_id=case_id,
        input_text=text,
        input_stream=plain,
        output_stream=cipher,
        input_autocorrelation=autocorrelation(plain, max_lag),
        output_autocorrelation=autocorrelation(cipher, max_lag),
        input_entropy=entropy(plain),
        output_entropy=entropy(cipher),
        input_distinct=len(set(plain.symbols)),
        output_distinct=len(set(cipher.symbols)),
    )


def run_case(case_id: int, profile: NetworkProfile, frame: KeyFrame,
             key: HiddenKey, max_lag: int = 20) -> CaseReport:
    """Encrypt one built-in case and measure both sides.

    Case texts include punctuation, so they are coded with the 41-symbol
    alphabet regardless of the profile's text alphabet.
    """
    text = CASE_INPUTS.get(case_id)
    if text is None:
        raise UnknownCase(f"case {case_id} is not one of {sorted(CASE_INPUTS)}")
    return analyze_text(text, profile, frame, key, alphabet=LATIN41,
                        max_lag=max_lag, case_id=case_id)
