//! Seeded random instances for the self-test and the acceptance suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use theta_forge_core::hyper::{FactorialBase, PfqParams};
use theta_forge_core::poly::rat;
use theta_forge_core::{DOperator, LinearForm, Poly, Rational, ThetaOperator};

pub const SEED_ENV: &str = "THETA_FORGE_SEED";
pub const DEFAULT_SEED: u64 = 0x7e7a;

/// Seed from `THETA_FORGE_SEED`, falling back to a fixed default.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-6..=6), self.rng.gen_range(1..=4))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        let n = self.rng.gen_range(1..=6) * if self.coin() { 1 } else { -1 };
        rat(n, self.rng.gen_range(1..=4))
    }

    /// Possibly zero, degree at most `max_deg`.
    pub fn poly_up_to(&mut self, max_deg: usize) -> Poly {
        let len = self.range(0, max_deg + 1);
        Poly::from_coeffs((0..len).map(|_| self.rational()).collect())
    }

    pub fn poly_exact(&mut self, deg: usize) -> Poly {
        let mut c: Vec<Rational> = (0..deg).map(|_| self.rational()).collect();
        c.push(self.nonzero_rational());
        Poly::from_coeffs(c)
    }

    pub fn nonzero_poly(&mut self, max_deg: usize) -> Poly {
        let d = self.range(0, max_deg);
        self.poly_exact(d)
    }

    fn coeffs(&mut self, max_order: usize, max_deg: usize) -> Vec<Poly> {
        let m = self.range(1, max_order);
        let mut c: Vec<Poly> = (0..m).map(|_| self.poly_up_to(max_deg)).collect();
        c.push(self.nonzero_poly(max_deg));
        c
    }

    pub fn theta_op(&mut self, max_order: usize, max_deg: usize) -> ThetaOperator {
        ThetaOperator::new(self.coeffs(max_order, max_deg)).expect("nonzero leading coefficient")
    }

    pub fn d_op(&mut self, max_order: usize, max_deg: usize) -> DOperator {
        DOperator::new(self.coeffs(max_order, max_deg)).expect("nonzero leading coefficient")
    }

    /// `(N, [P_1, …, P_m])` with `deg N = lead`, `deg P_m = last`, `deg P_j <= rest`.
    fn equation(&mut self, m: usize, lead: usize, rest: usize, last: usize) -> (Poly, Vec<Poly>) {
        let n = self.poly_exact(lead);
        let mut rhs: Vec<Poly> = (1..m).map(|_| self.poly_up_to(rest)).collect();
        rhs.push(self.poly_exact(last));
        (n, rhs)
    }

    /// `m ∈ {2,3,4}`, `deg N = S <= 3`, `deg P_m = S + 1`, `deg P_j <= S`.
    pub fn t1_op(&mut self) -> ThetaOperator {
        let (m, s) = (self.range(2, 4), self.range(0, 3));
        let (n, rhs) = self.equation(m, s, s, s + 1);
        ThetaOperator::from_equation(n, rhs).expect("nonzero leading coefficient")
    }

    /// The same degree pattern read in the D basis.
    pub fn cond280_op(&mut self) -> DOperator {
        let (m, s) = (self.range(2, 4), self.range(0, 3));
        let (n, rhs) = self.equation(m, s, s, s + 1);
        DOperator::from_equation(n, rhs).expect("nonzero leading coefficient")
    }

    /// `deg P_m = r <= 3`, `deg N = r + 1`, `deg P_j <= r`.
    pub fn cond290_op(&mut self) -> DOperator {
        let (m, r) = (self.range(2, 4), self.range(0, 3));
        let (n, rhs) = self.equation(m, r + 1, r, r);
        DOperator::from_equation(n, rhs).expect("nonzero leading coefficient")
    }

    /// Nonzero form with `m` components of degree at most `max_deg`.
    pub fn nonzero_form(&mut self, m: usize, max_deg: usize) -> LinearForm {
        let mut comps: Vec<Poly> = (0..m).map(|_| self.poly_up_to(max_deg)).collect();
        if comps.iter().all(Poly::is_zero) {
            let i = self.range(0, m - 1);
            comps[i] = self.nonzero_poly(max_deg);
        }
        LinearForm::new(comps).expect("m >= 1")
    }

    pub fn poly_matrix(&mut self, m: usize, max_deg: usize) -> Vec<Vec<Poly>> {
        (0..m).map(|_| (0..m).map(|_| self.poly_up_to(max_deg)).collect()).collect()
    }

    /// `(x+1) ∏ (x + c_i)` with positive rational `c_i`, total degree in `2..=max_deg`.
    pub fn factorial_base(&mut self, max_deg: usize) -> FactorialBase {
        let deg = self.range(2, max_deg);
        let p = (1..deg).fold(Poly::from_i64s(&[1, 1]), |acc, _| {
            let c = rat(self.rng.gen_range(1..=9), self.rng.gen_range(1..=3));
            &acc * &Poly::from_coeffs(vec![c, Rational::from_integer(1.into())])
        });
        FactorialBase::new(p).expect("roots are negative")
    }

    /// `p` upper and `q - 1` lower parameters with `q <= max_q`; `p` is
    /// drawn from `p_lo..q`.
    pub fn pfq_params(&mut self, max_q: usize, p_lo: usize) -> PfqParams {
        let q = self.range(p_lo + 1, max_q);
        let p = self.range(p_lo, q - 1);
        let a = (0..p)
            .map(|_| rat(self.rng.gen_range(-8..=8), self.rng.gen_range(1..=4)))
            .collect();
        let b = (1..q)
            .map(|_| rat(self.rng.gen_range(1..=12), self.rng.gen_range(1..=4)))
            .collect();
        PfqParams::new(a, b).expect("p < q and positive lower parameters")
    }

    /// An operator in either basis, for roundtrip checks.
    pub fn operator_coeffs(&mut self, max_order: usize, max_deg: usize) -> Vec<Poly> {
        self.coeffs(max_order, max_deg)
    }
}
