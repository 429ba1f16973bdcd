//! Sieve tables for the von Mangoldt, Möbius and Liouville functions and the
//! summatory functions built on them: π(x), ψ(x), ϑ(x) and ψ₁(x).
//!
//! A linear (Euler) sieve produces the smallest prime factor of every n, from
//! which μ, λ and primality follow in one pass; Λ is filled by walking the
//! powers of each prime. Prefix sums for ψ, ϑ and π are built once with
//! compensated summation so each query is O(1). ψ₁(x) depends on x inside the
//! summand and is evaluated on demand.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::summation::Neumaier;

/// Bytes held per table row once the build is finished, plus the transient
/// smallest-prime-factor array used during the sieve.
pub const ROW_BYTES: u64 = 8 + 1 + 1 + 8 + 8 + 4 + 4 + 1;

/// Default memory budget for a table build, 2 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;

/// Sieve-built tables of Λ, μ, λ and primality for 1..=limit.
///
/// Index 0 of every array is unused padding so that `mangoldt()[n]` is Λ(n).
#[derive(Debug, Clone)]
pub struct ArithTable {
    limit: u64,
    mangoldt: Vec<f64>,
    mobius: Vec<i8>,
    liouville: Vec<i8>,
    is_prime: BitSet,
    psi_prefix: Vec<f64>,
    theta_prefix: Vec<f64>,
    pi_prefix: Vec<u32>,
}

/// Snapshot of the Chebyshev-type functions at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebyshevValues {
    pub x: f64,
    pub psi: f64,
    pub theta: f64,
    pub psi1: f64,
    pub pi: u64,
}

#[derive(Debug, Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
}

impl ArithTable {
    /// Builds the table for 1..=n_max under the default memory budget.
    pub fn build(n_max: u64) -> Result<Self> {
        Self::build_with_budget(n_max, DEFAULT_MEMORY_BUDGET)
    }

    pub fn build_with_budget(n_max: u64, budget: u64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Parameter("table limit must be at least 1".into()));
        }
        let needed = (n_max + 1).saturating_mul(ROW_BYTES);
        if needed > budget || n_max > u32::MAX as u64 {
            return Err(Error::Capacity { limit: n_max, needed, budget });
        }
        let len = n_max as usize + 1;

        let mut spf = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        let mut mobius = vec![0i8; len];
        let mut liouville = vec![0i8; len];
        let mut is_prime = BitSet::new(len);
        mobius[1] = 1;
        liouville[1] = 1;

        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                is_prime.set(i);
                mobius[i] = -1;
                liouville[i] = -1;
            }
            let si = spf[i];
            for &p in &primes {
                let n = i * p as usize;
                if p > si || n >= len {
                    break;
                }
                spf[n] = p;
                liouville[n] = -liouville[i];
                mobius[n] = if p == si { 0 } else { -mobius[i] };
            }
        }
        drop(spf);

        let mut mangoldt = vec![0.0f64; len];
        for &p in &primes {
            let log_p = (p as f64).ln();
            let mut pk = p as u64;
            while pk <= n_max {
                mangoldt[pk as usize] = log_p;
                pk *= p as u64;
            }
        }

        let mut psi_prefix = vec![0.0f64; len];
        let mut theta_prefix = vec![0.0f64; len];
        let mut pi_prefix = vec![0u32; len];
        let mut psi_acc = Neumaier::default();
        let mut theta_acc = Neumaier::default();
        let mut count = 0u32;
        for n in 1..len {
            psi_acc.add(mangoldt[n]);
            if is_prime.get(n) {
                theta_acc.add(mangoldt[n]);
                count += 1;
            }
            psi_prefix[n] = psi_acc.total();
            theta_prefix[n] = theta_acc.total();
            pi_prefix[n] = count;
        }

        Ok(ArithTable {
            limit: n_max,
            mangoldt,
            mobius,
            liouville,
            is_prime,
            psi_prefix,
            theta_prefix,
            pi_prefix,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Λ(n) for n in 0..=limit (entry 0 is 0).
    pub fn mangoldt(&self) -> &[f64] {
        &self.mangoldt
    }

    pub fn mobius(&self) -> &[i8] {
        &self.mobius
    }

    pub fn liouville(&self) -> &[i8] {
        &self.liouville
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.limit && self.is_prime.get(n as usize)
    }

    /// Primes up to `bound`, ascending.
    pub fn primes_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        let top = bound.min(self.limit);
        (2..=top).filter(move |&n| self.is_prime.get(n as usize))
    }

    fn floor_index(&self, x: f64) -> Result<usize> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Parameter(format!("x must be finite and nonnegative, got {x}")));
        }
        if x > self.limit as f64 {
            return Err(Error::Range { x, limit: self.limit });
        }
        Ok(x.floor() as usize)
    }

    /// ψ(x) = Σ_{n≤x} Λ(n).
    pub fn chebyshev_psi(&self, x: f64) -> Result<f64> {
        let n = self.floor_index(x)?;
        Ok(self.psi_prefix[n])
    }

    /// ϑ(x) = Σ_{p≤x} log p.
    pub fn chebyshev_theta(&self, x: f64) -> Result<f64> {
        let n = self.floor_index(x)?;
        Ok(self.theta_prefix[n])
    }

    pub fn prime_pi(&self, x: f64) -> Result<u64> {
        let n = self.floor_index(x)?;
        Ok(self.pi_prefix[n] as u64)
    }

    /// ψ(x) rebuilt as Σ_{m ≤ log₂ x} ϑ(x^{1/m}).
    pub fn psi_via_theta(&self, x: f64) -> Result<f64> {
        self.floor_index(x)?;
        if x < 2.0 {
            return Ok(0.0);
        }
        let m_max = x.log2().floor() as u32;
        let mut acc = Neumaier::default();
        for m in 1..=m_max {
            let root = integer_root(x, m);
            acc.add(self.theta_prefix[root as usize]);
        }
        Ok(acc.total())
    }

    /// ψ₁(x) = Σ_{n≤x} (x − n) Λ(n), one compensated pass over n ≤ x.
    pub fn psi1(&self, x: f64) -> Result<f64> {
        let top = self.floor_index(x)?;
        let mut acc = Neumaier::default();
        for (n, &lam) in self.mangoldt[..=top].iter().enumerate().skip(2) {
            if lam != 0.0 {
                acc.add((x - n as f64) * lam);
            }
        }
        Ok(acc.total())
    }

    pub fn chebyshev_values(&self, x: f64) -> Result<ChebyshevValues> {
        Ok(ChebyshevValues {
            x,
            psi: self.chebyshev_psi(x)?,
            theta: self.chebyshev_theta(x)?,
            psi1: self.psi1(x)?,
            pi: self.prime_pi(x)?,
        })
    }

    /// Residual of Abel's summation identity for a(n) = Λ(n) and f(t) = t^k:
    /// |Σ_{n≤x} Λ(n)n^k − (ψ(x)x^k − k∫₁ˣ ψ(u)u^{k−1}du)|.
    ///
    /// The integral is exact: ψ is constant on each [m, m+1), so
    /// k∫ψ(u)u^{k−1}du over that piece is ψ(m)((m+1)^k − m^k).
    pub fn abel_identity_check(&self, x: f64, k: u32) -> Result<f64> {
        let top = self.floor_index(x)?;
        if !(1..=3).contains(&k) {
            return Err(Error::Parameter(format!("exponent k must be 1, 2 or 3, got {k}")));
        }
        if x < 1.0 {
            return Ok(0.0);
        }
        let ki = k as i32;
        let mut lhs = Neumaier::default();
        for (n, &lam) in self.mangoldt[..=top].iter().enumerate().skip(2) {
            if lam != 0.0 {
                lhs.add(lam * (n as f64).powi(ki));
            }
        }
        let mut integral = Neumaier::default();
        for m in 1..top {
            let psi_m = self.psi_prefix[m];
            if psi_m != 0.0 {
                let mf = m as f64;
                integral.add(psi_m * ((mf + 1.0).powi(ki) - mf.powi(ki)));
            }
        }
        let tf = top as f64;
        integral.add(self.psi_prefix[top] * (x.powi(ki) - tf.powi(ki)));
        let rhs = self.psi_prefix[top] * x.powi(ki) - integral.total();
        Ok((lhs.total() - rhs).abs())
    }

    /// Checks ψ₁(βx) − ψ₁(x) ≥ x(β − 1)ψ(x), the differencing step that turns
    /// ψ₁ asymptotics into ψ asymptotics. Equality holds when (x, βx] has no
    /// prime power, so the comparison carries a relative slack of 1e−12.
    pub fn tauberian_inequality_check(&self, x: f64, beta: f64) -> Result<bool> {
        let (lhs, rhs) = self.tauberian_sides(x, beta)?;
        let slack = 1e-12 * lhs.abs().max(rhs.abs()) + 1e-12;
        Ok(lhs + slack >= rhs)
    }

    /// Both sides (ψ₁(βx) − ψ₁(x), x(β − 1)ψ(x)) of the differencing inequality.
    pub fn tauberian_sides(&self, x: f64, beta: f64) -> Result<(f64, f64)> {
        if !(beta > 1.0) || !beta.is_finite() {
            return Err(Error::Parameter(format!("beta must exceed 1, got {beta}")));
        }
        self.floor_index(x)?;
        let bx = beta * x;
        self.floor_index(bx)?;
        let lhs = self.psi1(bx)? - self.psi1(x)?;
        let rhs = x * (beta - 1.0) * self.chebyshev_psi(x)?;
        Ok((lhs, rhs))
    }
}

/// ⌊x^{1/m}⌋ with the floating root corrected to the exact integer floor.
fn integer_root(x: f64, m: u32) -> u64 {
    let n = x.floor() as u64;
    if m == 1 {
        return n;
    }
    let mut r = (x.powf(1.0 / m as f64)).floor() as u64;
    let pow_le = |r: u64| -> bool {
        let mut acc: u64 = 1;
        for _ in 0..m {
            acc = match acc.checked_mul(r) {
                Some(v) => v,
                None => return false,
            };
        }
        acc <= n
    };
    while r > 0 && !pow_le(r) {
        r -= 1;
    }
    while pow_le(r + 1) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_mangoldt(n: u64) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }

    #[test]
    fn limit_one() {
        let t = ArithTable::build(1).unwrap();
        assert_eq!(t.mangoldt()[1], 0.0);
        assert_eq!(t.mobius()[1], 1);
        assert_eq!(t.liouville()[1], 1);
        assert!(!t.is_prime(1));
    }

    #[test]
    fn small_values() {
        let t = ArithTable::build(10).unwrap();
        assert_eq!(t.mobius()[6], 1);
        assert_eq!(t.mobius()[4], 0);
        assert_eq!(t.mobius()[7], -1);
        assert_eq!(t.mangoldt()[8], 2f64.ln());
        assert_eq!(t.mangoldt()[6], 0.0);
        assert_eq!(t.liouville()[8], -1);
        assert_eq!(t.liouville()[6], 1);
    }

    #[test]
    fn mangoldt_matches_trial_division() {
        let t = ArithTable::build(2000).unwrap();
        for n in 1..=2000u64 {
            assert_eq!(t.mangoldt()[n as usize], brute_mangoldt(n), "n={n}");
        }
    }

    #[test]
    fn mobius_divisor_sum_is_delta() {
        let t = ArithTable::build(3000).unwrap();
        for n in 1..=3000usize {
            let s: i32 = (1..=n).filter(|d| n % d == 0).map(|d| t.mobius()[d] as i32).sum();
            assert_eq!(s, i32::from(n == 1), "n={n}");
        }
    }

    #[test]
    fn mangoldt_divisor_sum_is_log() {
        let t = ArithTable::build(5000).unwrap();
        for n in 1..=5000usize {
            let s: f64 = (1..=n).filter(|d| n % d == 0).map(|d| t.mangoldt()[d]).sum();
            assert!((s - (n as f64).ln()).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn psi_and_theta_at_ten() {
        let t = ArithTable::build(100).unwrap();
        let (l2, l3, l5, l7) = (2f64.ln(), 3f64.ln(), 5f64.ln(), 7f64.ln());
        let psi = t.chebyshev_psi(10.0).unwrap();
        assert!((psi - (3.0 * l2 + 2.0 * l3 + l5 + l7)).abs() < 1e-12);
        assert!((psi - 7.832).abs() < 1e-3);
        let theta = t.chebyshev_theta(10.0).unwrap();
        assert!((theta - 210f64.ln()).abs() < 1e-12);
        assert_eq!(t.chebyshev_theta(1.9).unwrap(), 0.0);
        assert_eq!(t.chebyshev_psi(1.0).unwrap(), 0.0);
    }

    #[test]
    fn prime_counts() {
        let t = ArithTable::build(100).unwrap();
        assert_eq!(t.prime_pi(1.0).unwrap(), 0);
        assert_eq!(t.prime_pi(10.0).unwrap(), 4);
        assert_eq!(t.prime_pi(100.0).unwrap(), 25);
    }

    #[test]
    fn psi_via_theta_small() {
        let t = ArithTable::build(100).unwrap();
        // ϑ(3) + ϑ(√3) = log 6 + 0
        assert!((t.psi_via_theta(3.0).unwrap() - 6f64.ln()).abs() < 1e-12);
        assert_eq!(t.psi_via_theta(1.0).unwrap(), 0.0);
        let a = t.psi_via_theta(100.0).unwrap();
        let b = t.chebyshev_psi(100.0).unwrap();
        assert!((a - b).abs() <= 1e-9 * b);
    }

    #[test]
    fn psi1_small() {
        let t = ArithTable::build(100).unwrap();
        assert_eq!(t.psi1(2.0).unwrap(), 0.0);
        let v = t.psi1(4.0).unwrap();
        assert!((v - (2.0 * 2f64.ln() + 3f64.ln())).abs() < 1e-12);
        assert!((v - 2.4849).abs() < 1e-4);
    }

    #[test]
    fn abel_residuals() {
        let t = ArithTable::build(1000).unwrap();
        for k in 1..=3 {
            assert_eq!(t.abel_identity_check(1.0, k).unwrap(), 0.0);
        }
        assert!(t.abel_identity_check(10.0, 1).unwrap() < 1e-9);
        let lhs: f64 = (2..=1000).map(|n| t.mangoldt()[n] * (n * n) as f64).sum();
        assert!(t.abel_identity_check(1000.0, 2).unwrap() < 1e-6 * lhs);
        assert!(t.abel_identity_check(10.0, 4).is_err());
    }

    #[test]
    fn tauberian_examples() {
        let t = ArithTable::build(20_000).unwrap();
        assert!(t.tauberian_inequality_check(10.0, 2.0).unwrap());
        assert!(t.tauberian_inequality_check(1.0, 1.5).unwrap());
        assert!(t.tauberian_inequality_check(1e4, 1.1).unwrap());
        // no prime power in (2, 2.2]: equality case
        assert!(t.tauberian_inequality_check(2.0, 1.1).unwrap());
        assert!(t.tauberian_inequality_check(1e4, 3.0).is_err());
        assert!(t.tauberian_inequality_check(10.0, 1.0).is_err());
    }

    #[test]
    fn range_and_parameter_errors() {
        let t = ArithTable::build(50).unwrap();
        assert!(matches!(t.chebyshev_psi(51.0), Err(Error::Range { .. })));
        assert!(matches!(t.prime_pi(-1.0), Err(Error::Parameter(_))));
        assert!(matches!(t.psi1(f64::NAN), Err(Error::Parameter(_))));
        assert!(matches!(ArithTable::build(0), Err(Error::Parameter(_))));
        assert!(matches!(
            ArithTable::build_with_budget(1_000_000, 1024),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn integer_root_exact() {
        assert_eq!(integer_root(64.0, 3), 4);
        assert_eq!(integer_root(63.9, 3), 3);
        assert_eq!(integer_root(1e6, 2), 1000);
        assert_eq!(integer_root(999_999.0, 2), 999);
    }
}
