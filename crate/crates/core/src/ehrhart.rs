//! Lattice points in integer dilates, Ehrhart polynomials and normalized
//! volumes of `PPerm(m,n)`, `PASM(m,n)` and `P(m,n)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, interpolate, RatPolynomial, Rational};
use crate::permutohedron::prefix_bound;

/// Default cap on dynamic-programming states, overridable through
/// [`STATE_CAP_VAR`].
pub const DEFAULT_STATE_CAP: u128 = 100_000_000;
pub const STATE_CAP_VAR: &str = "PPOLY_MAX_STATES";
/// Largest search space the naive counter accepts.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolytopeKind {
    PPerm,
    Pasm,
    Permutohedron,
}

impl PolytopeKind {
    pub fn name(self) -> &'static str {
        match self {
            PolytopeKind::PPerm => "pperm",
            PolytopeKind::Pasm => "pasm",
            PolytopeKind::Permutohedron => "permutohedron",
        }
    }
}

impl fmt::Display for PolytopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolytopeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pperm" => Ok(PolytopeKind::PPerm),
            "pasm" => Ok(PolytopeKind::Pasm),
            "permutohedron" => Ok(PolytopeKind::Permutohedron),
            other => Err(format!("unknown polytope kind `{other}`")),
        }
    }
}

/// `mn` for the matrix polytopes, `m` for `P(m,n)`.
pub fn dimension(kind: PolytopeKind, m: usize, n: usize) -> usize {
    match kind {
        PolytopeKind::Permutohedron => m,
        _ => m * n,
    }
}

/// The configured state cap; unparsable values fall back to the default.
pub fn state_cap() -> u128 {
    std::env::var(STATE_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_CAP)
}

fn require_positive(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::DimensionMismatch(format!(
            "need m, n >= 1, got {m}x{n}"
        )));
    }
    Ok(())
}

/// Number of integer points in the `t`-th dilate.
pub fn count_lattice_points(kind: PolytopeKind, m: usize, n: usize, t: u64) -> Result<BigUint> {
    require_positive(m, n)?;
    match kind {
        PolytopeKind::Permutohedron => count_permutohedron(m, n, t).map(BigUint::from),
        _ => {
            let (a, b) = if m <= n { (m, n) } else { (n, m) };
            matrix_profile_count(kind, a, b, t, state_cap()).map(BigUint::from)
        }
    }
}

/// As [`count_lattice_points`] but with `m` always the state dimension.
pub fn count_lattice_points_oriented(
    kind: PolytopeKind,
    m: usize,
    n: usize,
    t: u64,
) -> Result<BigUint> {
    require_positive(m, n)?;
    match kind {
        PolytopeKind::Permutohedron => count_permutohedron(m, n, t).map(BigUint::from),
        _ => matrix_profile_count(kind, m, n, t, state_cap()).map(BigUint::from),
    }
}

fn states_needed(m: usize, t: u64) -> u128 {
    (t as u128 + 1).saturating_pow(m as u32 + 1)
}

fn guard(states: u128, cap: u128) -> Result<()> {
    if states > cap {
        return Err(Error::ResourceGuard { states, cap });
    }
    Ok(())
}

/// Column-major sweep over cells. The state holds the row partial sums
/// `r_0..r_{m-1}` and the partial sum `c` of the current column, each in
/// `[0,t]`, encoded in mixed radix `t+1` with `c` as the top digit.
fn matrix_profile_count(kind: PolytopeKind, m: usize, n: usize, t: u64, cap: u128) -> Result<u128> {
    let states = states_needed(m, t);
    guard(states, cap)?;
    let base = t as usize + 1;
    let size = states as usize;
    let pow: Vec<usize> = (0..=m).map(|k| base.pow(k as u32)).collect();
    let c_stride = pow[m];
    let mut cur = vec![0u128; size];
    cur[0] = 1;
    let mut next = vec![0u128; size];
    for _col in 0..n {
        for &stride in &pow[..m] {
            next.iter_mut().for_each(|x| *x = 0);
            for (idx, &count) in cur.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let c = idx / c_stride;
                let r = (idx / stride) % base;
                let low = idx % c_stride - r * stride;
                // entry e = c' - c must keep r + e in [0, t]
                let lo = if kind == PolytopeKind::PPerm {
                    c
                } else {
                    c.saturating_sub(r)
                };
                let hi = (c + (base - 1 - r)).min(base - 1);
                for c2 in lo..=hi {
                    let r2 = r + c2 - c;
                    let target = low + r2 * stride + c2 * c_stride;
                    next[target] = next[target]
                        .checked_add(count)
                        .ok_or(Error::Overflow("lattice point count"))?;
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        // the column is finished: reset its partial sum
        for idx in c_stride..size {
            let count = std::mem::take(&mut cur[idx]);
            if count != 0 {
                let target = idx % c_stride;
                cur[target] = cur[target]
                    .checked_add(count)
                    .ok_or(Error::Overflow("lattice point count"))?;
            }
        }
    }
    cur.iter()
        .try_fold(0u128, |acc, &x| acc.checked_add(x))
        .ok_or(Error::Overflow("lattice point count"))
}

/// Integer `u >= 0` whose `k` largest coordinates sum to at most `t * B_k`.
/// Values are placed from `t*n` down to `0`; the state is the number of
/// coordinates placed and their sum, and placing `c` copies among the
/// `m - k` free positions contributes `C(m - k, c)`.
fn count_permutohedron(m: usize, n: usize, t: u64) -> Result<u128> {
    let bound = |k: usize| t as u128 * prefix_bound(n, k) as u128;
    let smax = bound(m) as usize;
    let states = (m as u128 + 1) * (smax as u128 + 1);
    guard(states, state_cap())?;
    let choose: Vec<Vec<u128>> = (0..=m)
        .map(|a| {
            (0..=m)
                .map(|b| u128::try_from(binomial(a as u64, b as u64)).expect("small binomial"))
                .collect()
        })
        .collect();
    let width = smax + 1;
    let mut cur = vec![0u128; (m + 1) * width];
    cur[0] = 1;
    let vmax = t * n as u64;
    for v in (1..=vmax).rev() {
        let v = v as u128;
        let mut next = cur.clone();
        for k in 0..m {
            for s in 0..width {
                let count = cur[k * width + s];
                if count == 0 {
                    continue;
                }
                for c in 1..=(m - k) {
                    let total = s as u128 + c as u128 * v;
                    if total > bound(k + c) {
                        break;
                    }
                    let add = count
                        .checked_mul(choose[m - k][c])
                        .ok_or(Error::Overflow("permutohedron count"))?;
                    let slot = &mut next[(k + c) * width + total as usize];
                    *slot = slot
                        .checked_add(add)
                        .ok_or(Error::Overflow("permutohedron count"))?;
                }
            }
        }
        cur = next;
    }
    // remaining coordinates are zero
    (0..=m)
        .flat_map(|k| cur[k * width..(k + 1) * width].iter())
        .try_fold(0u128, |acc, &x| acc.checked_add(x))
        .ok_or(Error::Overflow("permutohedron count"))
}

/// Naive enumeration over a box, for cross-checking the dynamic programs.
pub fn count_lattice_points_brute(
    kind: PolytopeKind,
    m: usize,
    n: usize,
    t: u64,
) -> Result<BigUint> {
    require_positive(m, n)?;
    let t = t as i64;
    let (len, lo, hi) = match kind {
        PolytopeKind::PPerm => (m * n, 0, t),
        PolytopeKind::Pasm => (m * n, -t, t),
        PolytopeKind::Permutohedron => (m, 0, t * n as i64),
    };
    let space = ((hi - lo + 1) as u128)
        .checked_pow(len as u32)
        .unwrap_or(u128::MAX);
    if space > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit(format!("naive count over {space} points")));
    }
    let inside = |x: &[i64]| -> bool {
        match kind {
            PolytopeKind::Permutohedron => {
                let mut s = x.to_vec();
                s.sort_unstable_by(|a, b| b.cmp(a));
                let mut acc = 0i64;
                s.iter().enumerate().all(|(k, v)| {
                    acc += v;
                    acc <= t * prefix_bound(n, k + 1)
                })
            }
            PolytopeKind::PPerm => {
                (0..m).all(|i| (0..n).map(|j| x[i * n + j]).sum::<i64>() <= t)
                    && (0..n).all(|j| (0..m).map(|i| x[i * n + j]).sum::<i64>() <= t)
            }
            PolytopeKind::Pasm => {
                let ok = |v: i64| (0..=t).contains(&v);
                (0..m).all(|i| {
                    let mut acc = 0;
                    (0..n).all(|j| {
                        acc += x[i * n + j];
                        ok(acc)
                    })
                }) && (0..n).all(|j| {
                    let mut acc = 0;
                    (0..m).all(|i| {
                        acc += x[i * n + j];
                        ok(acc)
                    })
                })
            }
        }
    };
    let mut x = vec![lo; len];
    let mut count = 0u64;
    loop {
        if inside(&x) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == len {
                return Ok(BigUint::from(count));
            }
            if x[k] < hi {
                x[k] += 1;
                break;
            }
            x[k] = lo;
            k += 1;
        }
    }
}

/// Big integers serialize as decimal strings.
mod decimal {
    use std::fmt::Display;

    use serde::Serializer;

    pub fn one<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn many<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeResult {
    pub kind: PolytopeKind,
    pub m: usize,
    pub n: usize,
    pub dimension: usize,
    /// `L(0), ..., L(dimension)`.
    #[serde(serialize_with = "decimal::many")]
    pub counts: Vec<BigUint>,
    pub ehrhart: RatPolynomial,
    #[serde(serialize_with = "decimal::one")]
    pub normalized_volume: BigInt,
}

impl VolumeResult {
    pub fn has_positive_coefficients(&self) -> bool {
        self.ehrhart.coeffs().len() == self.dimension + 1
            && self.ehrhart.coeffs().iter().all(Rational::is_positive)
    }
}

/// Interpolates the counts at `t = 0..=dim`; the normalized volume is the
/// leading coefficient times `dim!`.
pub fn ehrhart_polynomial(kind: PolytopeKind, m: usize, n: usize) -> Result<VolumeResult> {
    require_positive(m, n)?;
    let dim = dimension(kind, m, n);
    if kind != PolytopeKind::Permutohedron {
        guard(states_needed(m.min(n), dim as u64), state_cap())?;
    }
    let counts = (0..=dim as u64)
        .into_par_iter()
        .map(|t| count_lattice_points(kind, m, n, t))
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(i64, Rational)> = counts
        .iter()
        .enumerate()
        .map(|(t, c)| (t as i64, Rational::from_integer(BigInt::from(c.clone()))))
        .collect();
    let ehrhart = interpolate(&points, dim)?;
    let lead = ehrhart.coeff(dim);
    let scaled = lead * Rational::from_integer(factorial(dim as u64));
    if !scaled.is_integer() || !scaled.is_positive() {
        return Err(Error::Invariant(format!(
            "normalized volume {scaled} of {kind}({m},{n}) is not a positive integer"
        )));
    }
    Ok(VolumeResult {
        kind,
        m,
        n,
        dimension: dim,
        counts,
        normalized_volume: scaled.numer().clone(),
        ehrhart,
    })
}

/// One checked identity `computed == expected`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeCheck {
    pub kind: PolytopeKind,
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "decimal::one")]
    pub computed: BigInt,
    #[serde(serialize_with = "decimal::one")]
    pub expected: BigInt,
    pub positive_coefficients: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeReport {
    pub checks: Vec<VolumeCheck>,
    pub pass: bool,
}

impl VolumeReport {
    fn from_checks(checks: Vec<VolumeCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VolumeReport { checks, pass }
    }
}

fn check_volume(kind: PolytopeKind, m: usize, n: usize, expected: BigInt) -> Result<VolumeCheck> {
    let r = ehrhart_polynomial(kind, m, n)?;
    Ok(VolumeCheck {
        kind,
        m,
        n,
        pass: r.normalized_volume == expected,
        positive_coefficients: r.has_positive_coefficients(),
        computed: r.normalized_volume,
        expected,
    })
}

/// Normalized volume of `P(2,n)` against `2n^2 - 1` for `n = 1..=n_max`.
pub fn verify_volume_theorem_p2n(n_max: usize) -> Result<VolumeReport> {
    let checks = (1..=n_max)
        .map(|n| {
            check_volume(
                PolytopeKind::Permutohedron,
                2,
                n,
                BigInt::from(2 * n * n - 1),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VolumeReport::from_checks(checks))
}

/// Ranges for the conjectured volume formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureScope {
    /// `PPerm(2,n)` against `C(2n,n) - n` for `n <= pperm_n_max`.
    pub pperm_n_max: usize,
    /// `P(m,2)` against `3^m - m` for `m <= permutohedron_m_max`.
    pub permutohedron_m_max: usize,
}

impl Default for ConjectureScope {
    fn default() -> Self {
        ConjectureScope {
            pperm_n_max: 5,
            permutohedron_m_max: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerification {
    pub pperm_two_rows: VolumeReport,
    pub permutohedron_two: VolumeReport,
    pub positivity: bool,
    pub pass: bool,
}

/// Checks both volume formulas and Ehrhart positivity of every polynomial
/// computed along the way.
pub fn verify_conjectures(scope: ConjectureScope) -> Result<ConjectureVerification> {
    let pperm = (1..=scope.pperm_n_max)
        .map(|n| {
            let expected = binomial(2 * n as u64, n as u64) - n;
            check_volume(PolytopeKind::PPerm, 2, n, expected)
        })
        .collect::<Result<Vec<_>>>()?;
    let perm = (1..=scope.permutohedron_m_max)
        .map(|m| {
            let expected = BigInt::from(3).pow(m as u32) - m;
            check_volume(PolytopeKind::Permutohedron, m, 2, expected)
        })
        .collect::<Result<Vec<_>>>()?;
    let positivity = pperm.iter().chain(&perm).all(|c| c.positive_coefficients);
    let pperm_two_rows = VolumeReport::from_checks(pperm);
    let permutohedron_two = VolumeReport::from_checks(perm);
    Ok(ConjectureVerification {
        pass: pperm_two_rows.pass && permutohedron_two.pass && positivity,
        pperm_two_rows,
        permutohedron_two,
        positivity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn small_counts() {
        for kind in [
            PolytopeKind::PPerm,
            PolytopeKind::Pasm,
            PolytopeKind::Permutohedron,
        ] {
            assert_eq!(count_lattice_points(kind, 2, 3, 0).unwrap(), big(1));
        }
        assert_eq!(
            count_lattice_points(PolytopeKind::Pasm, 2, 3, 1).unwrap(),
            big(17)
        );
        assert_eq!(
            count_lattice_points(PolytopeKind::PPerm, 2, 2, 1).unwrap(),
            big(7)
        );
        assert_eq!(
            count_lattice_points(PolytopeKind::PPerm, 2, 3, 1).unwrap(),
            big(13)
        );
        // 34 words plus interior points such as (1,1,0)
        assert_eq!(
            count_lattice_points(PolytopeKind::Permutohedron, 3, 3, 1).unwrap(),
            big(51)
        );
        assert_eq!(
            count_lattice_points_brute(PolytopeKind::Permutohedron, 3, 3, 1).unwrap(),
            big(51)
        );
    }

    #[test]
    fn dynamic_programs_match_brute_force() {
        let cases = [
            (PolytopeKind::PPerm, 2, 2, 3),
            (PolytopeKind::PPerm, 2, 3, 2),
            (PolytopeKind::Pasm, 2, 2, 3),
            (PolytopeKind::Pasm, 2, 3, 1),
            (PolytopeKind::Pasm, 3, 2, 1),
            (PolytopeKind::Permutohedron, 3, 2, 4),
            (PolytopeKind::Permutohedron, 4, 4, 2),
        ];
        for (kind, m, n, tmax) in cases {
            for t in 0..=tmax {
                assert_eq!(
                    count_lattice_points(kind, m, n, t).unwrap(),
                    count_lattice_points_brute(kind, m, n, t).unwrap(),
                    "{kind}({m},{n}) at t = {t}"
                );
            }
        }
    }

    #[test]
    fn orientation_does_not_matter() {
        for kind in [PolytopeKind::PPerm, PolytopeKind::Pasm] {
            for t in 0..4 {
                assert_eq!(
                    count_lattice_points_oriented(kind, 2, 3, t).unwrap(),
                    count_lattice_points_oriented(kind, 3, 2, t).unwrap()
                );
            }
        }
    }

    #[test]
    fn small_volumes() {
        assert_eq!(
            ehrhart_polynomial(PolytopeKind::PPerm, 2, 2)
                .unwrap()
                .normalized_volume,
            BigInt::from(4)
        );
        assert_eq!(
            ehrhart_polynomial(PolytopeKind::Pasm, 2, 3)
                .unwrap()
                .normalized_volume,
            BigInt::from(43)
        );
        let p = ehrhart_polynomial(PolytopeKind::Permutohedron, 3, 3).unwrap();
        assert_eq!(p.normalized_volume, BigInt::from(129));
        assert_eq!(p.ehrhart.coeff(0), Rational::one());
        assert!(p.has_positive_coefficients());
    }

    #[test]
    fn guard_trips_with_reported_cap() {
        assert_eq!(
            matrix_profile_count(PolytopeKind::Pasm, 3, 3, 9, 1000),
            Err(Error::ResourceGuard {
                states: 10_000,
                cap: 1000
            })
        );
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in [
            PolytopeKind::PPerm,
            PolytopeKind::Pasm,
            PolytopeKind::Permutohedron,
        ] {
            assert_eq!(kind.name().parse::<PolytopeKind>().unwrap(), kind);
        }
        assert!("cube".parse::<PolytopeKind>().is_err());
    }
}
