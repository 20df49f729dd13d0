//! Physicists' Hermite polynomials.

/// `H_n(x)` via the stable upward recurrence
/// `H_{n+1} = 2x H_n - 2n H_{n-1}`.
///
/// Callers must keep `n` within their truncation bound; raw values overflow
/// f64 around `n ~ 150` for moderate `x`, which is why weighted evaluations
/// should use [`hermite_normalized`] instead.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    let mut prev = 1.0f64;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `2^{-n/2} H_n(x) / sqrt(n!)`, the Hermite factor of the orthonormal
/// oscillator eigenfunction with the Gaussian stripped off.
///
/// Stays O(e^{x^2/2}) for every `n`, so eigenstate coefficients can be
/// formed at any truncation without overflow.
pub fn hermite_normalized(n: usize, x: f64) -> f64 {
    let mut prev = 1.0f64;
    if n == 0 {
        return prev;
    }
    let mut cur = x * 2f64.sqrt();
    for k in 1..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}
