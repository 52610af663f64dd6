"""Differentiation and quadrature on uniform periodic grids."""

import numpy as np

from .errors import UsageError

MIN_SAMPLES = 16


def wavenumbers(n, ds):
    """Angular wavenumbers for an ``n``-point grid of spacing ``ds``."""
    return 2.0 * np.pi * np.fft.fftfreq(n, d=ds)


def _is_constant(f, axis):
    first = np.take(f, [0], axis=axis)
    return bool(np.all(f == first))


def periodic_derivative(f, ds, order=1, axis=0):
    """Spectral derivative of periodic samples along ``axis``.

    Exact for band-limited fields.  The Nyquist mode is dropped for odd
    orders so real input gives real output.  A field that is exactly
    constant along ``axis`` returns exact zeros.

    Examples
    --------
    >>> s = np.arange(32) * (2 * np.pi / 32)
    >>> np.allclose(periodic_derivative(np.sin(s), 2 * np.pi / 32), np.cos(s))
    True
    """
    f = np.asarray(f)
    n = f.shape[axis]
    if n < 4:
        raise UsageError(f"need at least 4 samples for spectral differentiation, got {n}")
    if order < 0:
        raise UsageError("derivative order must be non-negative")
    if order == 0:
        return f.copy()
    if _is_constant(f, axis):
        return np.zeros_like(f)

    shape = [1] * f.ndim
    if np.iscomplexobj(f):
        k = wavenumbers(n, ds)
        mult = (1j * k) ** order
        if order % 2 == 1 and n % 2 == 0:
            mult[n // 2] = 0.0
        shape[axis] = n
        return np.fft.ifft(np.fft.fft(f, axis=axis) * mult.reshape(shape), axis=axis)

    k = 2.0 * np.pi * np.fft.rfftfreq(n, d=ds)
    mult = (1j * k) ** order
    if order % 2 == 1 and n % 2 == 0:
        mult[-1] = 0.0
    shape[axis] = mult.size
    return np.fft.irfft(np.fft.rfft(f, axis=axis) * mult.reshape(shape), n=n, axis=axis)


def central_derivative(f, ds, order=1, axis=0):
    """Second-order centered finite difference on a periodic grid."""
    f = np.asarray(f)
    fp = np.roll(f, -1, axis=axis)
    fm = np.roll(f, 1, axis=axis)
    if order == 1:
        return (fp - fm) / (2.0 * ds)
    if order == 2:
        return (fp - 2.0 * f + fm) / ds**2
    raise UsageError("central scheme supports order 1 or 2")


def seam_positions(n, ds, base_index=0):
    """Arclength of each sample measured forward from ``base_index``, in [0, L)."""
    return ((np.arange(n) - base_index) % n) * ds


def quasi_periodic_derivative(f, ds, seam_phase, order=1, base_index=0, axis=0):
    """Spectral derivative of a field with ``f(s + L) = exp(i*seam_phase) f(s)``.

    Samples are stored on the window starting at ``base_index``.  The field
    is demodulated by ``exp(-i*seam_phase*s/L)`` and differentiated with
    wavenumbers shifted by ``seam_phase/L``.
    """
    f = np.asarray(f, dtype=complex)
    n = f.shape[axis]
    length = n * ds
    shift = seam_phase / length
    shape = [1] * f.ndim
    shape[axis] = n
    carrier = np.exp(1j * shift * seam_positions(n, ds, base_index)).reshape(shape)
    k = wavenumbers(n, ds)
    mult = (1j * (k + shift)) ** order
    if n % 2 == 0:
        # symmetric treatment of the Nyquist pair
        mult[n // 2] = 0.5 * ((1j * (k[n // 2] + shift)) ** order + (1j * (-k[n // 2] + shift)) ** order)
    spec = np.fft.fft(f / carrier, axis=axis) * mult.reshape(shape)
    return carrier * np.fft.ifft(spec, axis=axis)


def quasi_periodic_central(f, ds, seam_phase, order=1, base_index=0, axis=0):
    """Centered difference for a quasi-periodic field (see above)."""
    f = np.asarray(f, dtype=complex)
    n = f.shape[axis]
    fp = np.roll(f, -1, axis=axis)
    fm = np.roll(f, 1, axis=axis)
    last = (base_index - 1) % n
    idx_p = [slice(None)] * f.ndim
    idx_m = [slice(None)] * f.ndim
    idx_p[axis] = last
    idx_m[axis] = base_index
    # neighbours across the seam continue the field, not the stored window
    fp[tuple(idx_p)] *= np.exp(1j * seam_phase)
    fm[tuple(idx_m)] *= np.exp(-1j * seam_phase)
    if order == 1:
        return (fp - fm) / (2.0 * ds)
    if order == 2:
        return (fp - 2.0 * f + fm) / ds**2
    raise UsageError("central scheme supports order 1 or 2")


def cumulative_trapezoid_periodic(f, ds, base_index=0):
    """Running trapezoid integral of periodic samples starting at ``base_index``.

    Returns ``(running, total)``: ``running[base_index] == 0`` and the
    running sum proceeds forward around the loop; ``total`` is the full
    loop integral (the periodic trapezoid rule).
    """
    f = np.asarray(f, dtype=float)
    n = f.shape[0]
    order = (np.arange(n) + base_index) % n
    g = f[order]
    panels = 0.5 * ds * (g[:-1] + g[1:])
    running_rolled = np.concatenate([[0.0], np.cumsum(panels)])
    total = running_rolled[-1] + 0.5 * ds * (g[-1] + g[0])
    running = np.empty(n)
    running[order] = running_rolled
    return running, float(total)


def cumulative_spectral_periodic(f, ds, base_index=0):
    """Running integral of periodic samples, exact for band-limited fields.

    The mean contributes ``mean * s``; the zero-mean part is integrated in
    Fourier space.  Same return convention as the trapezoid version.
    """
    f = np.asarray(f, dtype=float)
    n = f.shape[0]
    mean = float(np.mean(f))
    k = wavenumbers(n, ds)
    spec = np.fft.fft(f - mean)
    k[0] = 1.0
    anti = spec / (1j * k)
    anti[0] = 0.0
    if n % 2 == 0:
        anti[n // 2] = 0.0
    prim = np.fft.ifft(anti).real
    s = seam_positions(n, ds, base_index)
    running = mean * s + prim - prim[base_index]
    return running, mean * n * ds


def fourier_coefficients(samples):
    """Normalised DFT coefficients ``c_k`` with ``f_j = sum_k c_k exp(2 pi i k j / n)``."""
    return np.fft.fft(samples, axis=0) / samples.shape[0]


def fourier_evaluate(coeffs, u, derivative=0):
    """Evaluate the real trigonometric interpolant at parameters ``u`` in [0, 2*pi).

    ``coeffs`` come from :func:`fourier_coefficients` on samples at
    ``u_j = 2*pi*j/n``.  The Nyquist coefficient of an even grid is split
    symmetrically so the interpolant is real.
    """
    n = coeffs.shape[0]
    k = np.fft.fftfreq(n, d=1.0 / n)
    c = coeffs.copy()
    if n % 2 == 0:
        # split Nyquist as cos(n/2 u)
        k = np.append(k, n // 2)
        nyq = 0.5 * c[n // 2]
        c[n // 2] = nyq
        c = np.concatenate([c, nyq[None, ...]], axis=0)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    phase = np.exp(1j * np.outer(u, k))
    if derivative:
        phase = phase * (1j * k) ** derivative
    out = phase @ c.reshape(c.shape[0], -1)
    return out.real.reshape((u.size,) + coeffs.shape[1:])


def upsample(samples, m):
    """Band-limited resampling of periodic samples onto ``m >= n`` points."""
    n = samples.shape[0]
    if m < n:
        raise UsageError("upsample target must not be smaller than the input")
    if m == n:
        return np.array(samples, dtype=float)
    spec = np.fft.fft(samples, axis=0)
    out = np.zeros((m,) + samples.shape[1:], dtype=complex)
    npos = (n + 1) // 2  # modes 0 .. npos-1
    nneg = n // 2 - (1 if n % 2 == 0 else 0)
    out[:npos] = spec[:npos]
    if nneg:
        out[m - nneg:] = spec[n - nneg:]
    if n % 2 == 0:
        out[n // 2] = 0.5 * spec[n // 2]
        out[m - n // 2] = 0.5 * spec[n // 2]
    return (np.fft.ifft(out, axis=0) * (m / n)).real
