import numpy as np
import pytest


def sample_autocov(x: np.ndarray, lag: int) -> np.ndarray:
    """Biased sample autocovariance (1/n) sum_t x_t x_{t-lag}^T."""
    n = x.shape[0]
    if lag >= 0:
        return x[lag:].T @ x[: n - lag] / n
    return sample_autocov(x, -lag).T


def periodogram_by_autocov_sum(x: np.ndarray, omega: float) -> np.ndarray:
    """Independent periodogram oracle: sum_{|l|<n} Gamma_hat(l) e^{-i l w}."""
    n, p = x.shape
    out = np.zeros((p, p), dtype=complex)
    for lag in range(-(n - 1), n):
        out += sample_autocov(x, lag) * np.exp(-1j * lag * omega)
    return out


def ma_autocov(ma_coeffs, sigma, lag: int) -> np.ndarray:
    """Exact autocovariance of a finite MA model by convolution."""
    p = sigma.shape[0]
    weights = [np.eye(p)] + [np.asarray(b) for b in ma_coeffs]
    out = np.zeros((p, p))
    for t, w in enumerate(weights):
        if t + lag < len(weights):
            out += weights[t + lag] @ sigma @ w.T
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# One line per acceptance criterion, echoed in the terminal summary so the
# pass/fail status is visible even when pytest captures stdout.
ACCEPTANCE_LINES: list = []


def record_acceptance(number: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[criterion {number:2d}] {status}  {name}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
