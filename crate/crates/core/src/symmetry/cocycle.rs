use rand::Rng;

use super::{Sign, SymmetryError, UnitPhase};

pub const MAX_GENERATORS: usize = 8;

/// Projective (anti)unitary data on `G = Z_2^n`.
///
/// Group elements are bitmasks; bit `i` is the `i`-th generator and the
/// group product is XOR. `sigma` is a dense `2^n x 2^n` table indexed
/// `sigma[x * 2^n + y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityGroupData {
    n: usize,
    phi: Vec<Sign>,
    c: Vec<Sign>,
    phi_mask: u32,
    c_mask: u32,
    sigma: Vec<UnitPhase>,
}

fn mask_of(v: &[Sign]) -> u32 {
    v.iter().enumerate().filter(|(_, s)| s.is_minus()).fold(0, |m, (i, _)| m | (1 << i))
}

fn parity_sign(x: u32) -> Sign {
    if x.count_ones() % 2 == 1 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

impl ParityGroupData {
    pub fn new(phi: Vec<Sign>, c: Vec<Sign>, sigma: Vec<UnitPhase>) -> Result<Self, SymmetryError> {
        let n = phi.len();
        if n > MAX_GENERATORS {
            return Err(SymmetryError::TooManyGenerators(n));
        }
        if c.len() != n {
            return Err(SymmetryError::Shape(format!("phi has {n} entries but c has {}", c.len())));
        }
        let order = 1usize << n;
        if sigma.len() != order * order {
            return Err(SymmetryError::Shape(format!(
                "sigma must have {} entries, got {}",
                order * order,
                sigma.len()
            )));
        }
        Ok(Self { n, phi_mask: mask_of(&phi), c_mask: mask_of(&c), phi, c, sigma })
    }

    pub fn from_fn<F>(phi: Vec<Sign>, c: Vec<Sign>, f: F) -> Result<Self, SymmetryError>
    where
        F: Fn(u32, u32) -> UnitPhase,
    {
        let n = phi.len();
        if n > MAX_GENERATORS {
            return Err(SymmetryError::TooManyGenerators(n));
        }
        let order = 1u32 << n;
        let sigma = (0..order).flat_map(|x| (0..order).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self::new(phi, c, sigma)
    }

    pub fn trivial(phi: Vec<Sign>, c: Vec<Sign>) -> Result<Self, SymmetryError> {
        Self::from_fn(phi, c, |_, _| UnitPhase::ONE)
    }

    /// `sigma_{r,s}` on `Z_2^{r+s}`: the first `r` generators square to `-1`,
    /// the rest to `+1`, and distinct generators anticommute. `phi` and `c`
    /// are trivial.
    pub fn clifford_real(r: usize, s: usize) -> Result<Self, SymmetryError> {
        let n = r + s;
        let neg = (1u32 << r) - 1;
        Self::from_fn(vec![Sign::Plus; n], vec![Sign::Plus; n], |x, y| {
            let mut e = (x & y & neg).count_ones();
            for i in 0..n {
                if x >> i & 1 == 1 {
                    e += (y & ((1 << i) - 1)).count_ones();
                }
            }
            if e % 2 == 1 {
                UnitPhase::MINUS_ONE
            } else {
                UnitPhase::ONE
            }
        })
    }

    /// `sigma_n`: anticommuting generators squaring to `+1`, meant for a
    /// complex base.
    pub fn clifford_complex(n: usize) -> Result<Self, SymmetryError> {
        Self::clifford_real(0, n)
    }

    /// The CT group generated by whichever of `T` (antiunitary, even) and
    /// `C` (antiunitary, odd) are present, with `T^2 = t`, `C^2 = c` and
    /// `TC = CT`. With neither present but `chiral`, a single odd unitary `S`.
    pub fn ct_group(t: Option<Sign>, c: Option<Sign>, chiral: bool) -> Result<Self, SymmetryError> {
        let mut phi = Vec::new();
        let mut grading = Vec::new();
        let mut squares = Vec::new();
        if let Some(t) = t {
            phi.push(Sign::Minus);
            grading.push(Sign::Plus);
            squares.push(t);
        }
        if let Some(c) = c {
            phi.push(Sign::Minus);
            grading.push(Sign::Minus);
            squares.push(c);
        }
        if phi.is_empty() && chiral {
            phi.push(Sign::Plus);
            grading.push(Sign::Minus);
            squares.push(Sign::Plus);
        }
        Self::from_fn(phi, grading, |x, y| {
            let both = x & y;
            let minus = squares.iter().enumerate().filter(|(i, s)| both >> i & 1 == 1 && s.is_minus()).count();
            if minus % 2 == 1 {
                UnitPhase::MINUS_ONE
            } else {
                UnitPhase::ONE
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        1 << self.n
    }

    pub fn phi_generators(&self) -> &[Sign] {
        &self.phi
    }

    pub fn c_generators(&self) -> &[Sign] {
        &self.c
    }

    pub fn phi(&self, x: u32) -> Sign {
        parity_sign(x & self.phi_mask)
    }

    pub fn c(&self, x: u32) -> Sign {
        parity_sign(x & self.c_mask)
    }

    pub fn sigma(&self, x: u32, y: u32) -> UnitPhase {
        self.sigma[(x as usize) << self.n | y as usize]
    }

    pub fn sigma_table(&self) -> &[UnitPhase] {
        &self.sigma
    }

    /// Overwrites one table entry. The result need not be a cocycle.
    pub fn with_entry(mut self, x: u32, y: u32, v: UnitPhase) -> Self {
        let n = self.n;
        self.sigma[(x as usize) << n | y as usize] = v;
        self
    }

    fn in_kernel(&self, x: u32) -> bool {
        self.phi(x) == Sign::Plus && self.c(x) == Sign::Plus
    }

    fn image_key(&self, x: u32) -> (bool, bool) {
        (self.phi(x).is_minus(), self.c(x).is_minus())
    }

    /// Number of leading generators in `ker(phi, c)` if the generator list
    /// has the reduced shape (kernel generators followed by one odd
    /// unitary, one antiunitary, or an even/odd antiunitary pair).
    pub fn reduced_split(&self) -> Result<usize, SymmetryError> {
        let k = (0..self.n).take_while(|&i| self.in_kernel(1 << i)).count();
        let tail: Vec<(bool, bool)> = (k..self.n).map(|i| self.image_key(1 << i)).collect();
        let ok = match tail.as_slice() {
            [] => true,
            [_] => true,
            [(true, false), (true, true)] => true,
            _ => false,
        };
        if ok {
            Ok(k)
        } else {
            Err(SymmetryError::NotReduced(format!(
                "generators after the first {k} kernel generators have (phi, c) pattern {tail:?}"
            )))
        }
    }
}

/// True iff `sigma` is normalised and satisfies
/// `sigma(x,y) sigma(xy,z) = sigma(y,z)^x sigma(x,yz)` on all triples, where
/// `^x` conjugates when `phi(x) = -1`.
pub fn validate_cocycle(d: &ParityGroupData) -> bool {
    let order = d.order();
    for x in 0..order {
        if !d.sigma(0, x).is_one() || !d.sigma(x, 0).is_one() {
            return false;
        }
    }
    for x in 0..order {
        let px = d.phi(x);
        for y in 0..order {
            let sxy = d.sigma(x, y);
            for z in 0..order {
                let lhs = sxy * d.sigma(x ^ y, z);
                let rhs = d.sigma(y, z).act(px) * d.sigma(x, y ^ z);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// `sigma'(x,y) = lambda(x) lambda(y)^x sigma(x,y) lambda(xy)^-1`.
pub fn exterior_transform(d: &ParityGroupData, lambda: &[UnitPhase]) -> Result<ParityGroupData, SymmetryError> {
    let order = d.order();
    if lambda.len() != order as usize {
        return Err(SymmetryError::Shape(format!("lambda must have {order} entries, got {}", lambda.len())));
    }
    if !lambda[0].is_one() {
        return Err(SymmetryError::LambdaNotNormalized);
    }
    let l = |x: u32| lambda[x as usize];
    ParityGroupData::from_fn(d.phi.clone(), d.c.clone(), |x, y| {
        l(x) * l(y).act(d.phi(x)) * d.sigma(x, y) * l(x ^ y).inv()
    })
}

/// Record of the change of `F_2`-basis made by [`reduce_antiunitaries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    /// New generator `i` expressed as a bitmask in the old basis.
    pub generators: Vec<u32>,
    /// How many leading new generators lie in `ker(phi, c)`.
    pub kernel_rank: usize,
}

impl BasisChange {
    pub fn to_old(&self, new: u32) -> u32 {
        self.generators.iter().enumerate().filter(|(i, _)| new >> i & 1 == 1).fold(0, |acc, (_, g)| acc ^ g)
    }
}

/// Rebases `Z_2^n` so that the generators are a basis of `ker(phi, c)`
/// followed by at most two generators spanning the image of `(phi, c)`.
pub fn reduce_antiunitaries(d: &ParityGroupData) -> (ParityGroupData, BasisChange) {
    let order = d.order();
    let mut span = vec![false; order as usize];
    span[0] = true;
    let mut generators = Vec::with_capacity(d.n);
    for x in 1..order {
        if d.in_kernel(x) && !span[x as usize] {
            let old: Vec<u32> = (0..order).filter(|&s| span[s as usize]).collect();
            for s in old {
                span[(s ^ x) as usize] = true;
            }
            generators.push(x);
        }
    }
    let kernel_rank = generators.len();

    let lowest = |key: (bool, bool)| (1..order).find(|&x| d.image_key(x) == key);
    let mut image: Vec<(bool, bool)> = (0..order).map(|x| d.image_key(x)).collect();
    image.sort();
    image.dedup();
    match image.len() {
        1 => {}
        2 => generators.push(lowest(image[1]).expect("image element has a preimage")),
        _ => {
            generators.push(lowest((true, false)).expect("even antiunitary exists"));
            generators.push(lowest((true, true)).expect("odd antiunitary exists"));
        }
    }
    debug_assert_eq!(generators.len(), d.n);

    let change = BasisChange { generators, kernel_rank };
    let phi = change.generators.iter().map(|&g| d.phi(g)).collect();
    let c = change.generators.iter().map(|&g| d.c(g)).collect();
    let out = ParityGroupData::from_fn(phi, c, |x, y| d.sigma(change.to_old(x), change.to_old(y)))
        .expect("same shape as input");
    (out, change)
}

/// Exterior-equivalence invariants of reduced data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    /// Squares of the unitary generators after normalisation; always `+1`.
    pub u_squares: Vec<Sign>,
    /// `A_k^2 = sigma(A_k, A_k)` for the antiunitary generators.
    pub a_squares: Vec<Sign>,
    /// `commutation_signs[i][j]` is the scalar `k` with `g_i g_j = k g_j g_i`.
    pub commutation_signs: Vec<Vec<Sign>>,
    /// The standardised cocycle: `sigma(x, g) = 1` whenever every generator
    /// in `x` precedes `g`.
    pub data: ParityGroupData,
}

/// Normalises reduced data so unitary generators square to `+1`, the two
/// antiunitaries (if any) commute, and every element is the ordered product
/// of its generators.
pub fn standardize(d: &ParityGroupData) -> Result<StandardForm, SymmetryError> {
    d.reduced_split()?;
    if !validate_cocycle(d) {
        return Err(SymmetryError::InvalidCocycle);
    }
    let n = d.n;
    let anti: Vec<usize> = (0..n).filter(|&i| d.phi[i].is_minus()).collect();

    let mut gen_lambda = vec![UnitPhase::ONE; n];
    for i in 0..n {
        let g = 1u32 << i;
        if d.phi[i] == Sign::Plus {
            gen_lambda[i] = d.sigma(g, g).inv().sqrt();
        }
    }
    if let [a1, a2] = anti[..] {
        let (g1, g2) = (1u32 << a1, 1u32 << a2);
        gen_lambda[a1] = d.sigma(g2, g1).sqrt();
        gen_lambda[a2] = d.sigma(g1, g2).sqrt();
    }

    // lambda on x is fixed by declaring the new operator for x to be the
    // ordered product of the new generator operators
    let mut lambda = vec![UnitPhase::ONE; d.order() as usize];
    for x in 1..d.order() {
        let top = 31 - x.leading_zeros();
        let acc = x & !(1 << top);
        let g = 1u32 << top;
        lambda[x as usize] =
            lambda[acc as usize] * gen_lambda[top as usize].act(d.phi(acc)) * d.sigma(acc, g);
    }
    let data = exterior_transform(d, &lambda)?;

    let sign_of = |p: UnitPhase| p.as_sign().ok_or(SymmetryError::InvalidCocycle);
    let mut u_squares = Vec::new();
    let mut a_squares = Vec::new();
    for i in 0..n {
        let g = 1u32 << i;
        let sq = sign_of(data.sigma(g, g))?;
        if d.phi[i].is_minus() {
            a_squares.push(sq);
        } else {
            u_squares.push(sq);
        }
    }
    let mut commutation_signs = vec![vec![Sign::Plus; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (gi, gj) = (1u32 << i, 1u32 << j);
            commutation_signs[i][j] = sign_of(data.sigma(gi, gj) * data.sigma(gj, gi).inv())?;
        }
    }
    Ok(StandardForm { u_squares, a_squares, commutation_signs, data })
}

/// Exterior-equivalent cocycle with values in `{+-1}`, built from the
/// square root of `y -> sigma(w,y) / sigma(y,w)` for an antiunitary `w`.
pub fn pm1_reduce(d: &ParityGroupData, w: u32) -> Result<ParityGroupData, SymmetryError> {
    if w >= d.order() {
        return Err(SymmetryError::Shape(format!("element {w} outside a group of order {}", d.order())));
    }
    if d.phi(w) == Sign::Plus {
        return Err(SymmetryError::NotAntiunitary(w));
    }
    let lambda: Vec<UnitPhase> =
        (0..d.order()).map(|y| (d.sigma(w, y) * d.sigma(y, w).inv()).sqrt()).collect();
    exterior_transform(d, &lambda)
}

/// A random valid cocycle for the given `phi` and `c`: a bilinear sign
/// cocycle `(-1)^{x^T B y}` pushed through a random eighth-root coboundary.
pub fn random_valid_cocycle<R: Rng + ?Sized>(rng: &mut R, phi: Vec<Sign>, c: Vec<Sign>) -> ParityGroupData {
    let n = phi.len();
    let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
    let bilinear = ParityGroupData::from_fn(phi, c, |x, y| {
        let mut e = 0;
        for (i, row) in b.iter().enumerate() {
            if x >> i & 1 == 1 {
                e += (row & y).count_ones();
            }
        }
        if e % 2 == 1 {
            UnitPhase::MINUS_ONE
        } else {
            UnitPhase::ONE
        }
    })
    .expect("valid shape");
    let mut lambda: Vec<UnitPhase> = (0..1u32 << n).map(|_| UnitPhase::from_turns(rng.gen_range(0..8), 8)).collect();
    lambda[0] = UnitPhase::ONE;
    exterior_transform(&bilinear, &lambda).expect("normalised lambda")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use Sign::{Minus as M, Plus as P};

    #[test]
    fn trivial_cocycles_validate() {
        for phi in [vec![], vec![M], vec![P, M], vec![M, M, P]] {
            let c = vec![P; phi.len()];
            assert!(validate_cocycle(&ParityGroupData::trivial(phi, c).unwrap()));
        }
    }

    #[test]
    fn clifford_cocycles_validate() {
        for r in 0..4 {
            for s in 0..4 {
                assert!(validate_cocycle(&ParityGroupData::clifford_real(r, s).unwrap()), "({r},{s})");
            }
        }
    }

    #[test]
    fn clifford_generator_relations() {
        let d = ParityGroupData::clifford_real(2, 1).unwrap();
        assert_eq!(d.sigma(1, 1), UnitPhase::MINUS_ONE);
        assert_eq!(d.sigma(2, 2), UnitPhase::MINUS_ONE);
        assert_eq!(d.sigma(4, 4), UnitPhase::ONE);
        // e_0 e_1 = -e_1 e_0
        assert_eq!(d.sigma(1, 2) * d.sigma(2, 1).inv(), UnitPhase::MINUS_ONE);
    }

    #[test]
    fn corrupted_entry_fails() {
        let d = ParityGroupData::clifford_real(1, 1).unwrap().with_entry(1, 2, UnitPhase::from_turns(1, 3));
        assert!(!validate_cocycle(&d));
    }

    #[test]
    fn unnormalised_fails() {
        let d = ParityGroupData::trivial(vec![P], vec![P]).unwrap().with_entry(0, 1, UnitPhase::MINUS_ONE);
        assert!(!validate_cocycle(&d));
    }

    #[test]
    fn reduce_single_antiunitary_unchanged() {
        let d = ParityGroupData::trivial(vec![M], vec![P]).unwrap();
        let (r, change) = reduce_antiunitaries(&d);
        assert_eq!(r, d);
        assert_eq!(change.generators, vec![1]);
    }

    #[test]
    fn reduce_three_antiunitaries() {
        let d = ParityGroupData::trivial(vec![M, M, M], vec![P, P, P]).unwrap();
        let (r, change) = reduce_antiunitaries(&d);
        assert_eq!(change.kernel_rank, 2);
        assert_eq!(r.phi_generators(), &[P, P, M]);
        assert_eq!(change.generators, vec![0b011, 0b101, 0b001]);
        assert!(r.reduced_split().is_ok());
    }

    #[test]
    fn reduce_full_image() {
        let d = ParityGroupData::trivial(vec![M, P, M, P], vec![M, M, P, P]).unwrap();
        let (r, change) = reduce_antiunitaries(&d);
        assert_eq!(change.kernel_rank, 2);
        assert_eq!(&r.phi_generators()[2..], &[M, M]);
        assert_eq!(&r.c_generators()[2..], &[P, M]);
    }

    #[test]
    fn reduce_transports_a_valid_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = random_valid_cocycle(&mut rng, vec![M, P, M], vec![M, M, P]);
        let (r, _) = reduce_antiunitaries(&d);
        assert!(validate_cocycle(&r));
    }

    #[test]
    fn standardize_trivial() {
        let d = ParityGroupData::trivial(vec![P, M], vec![P, P]).unwrap();
        let sf = standardize(&d).unwrap();
        assert_eq!(sf.u_squares, vec![P]);
        assert_eq!(sf.a_squares, vec![P]);
        assert!(sf.commutation_signs.iter().flatten().all(|&s| s == P));
    }

    #[test]
    fn standardize_class_cii() {
        let d = ParityGroupData::ct_group(Some(M), Some(M), false).unwrap();
        let sf = standardize(&d).unwrap();
        assert_eq!(sf.a_squares, vec![M, M]);
        assert_eq!(sf.commutation_signs[0][1], P);
    }

    #[test]
    fn standardize_rejects_unreduced() {
        let d = ParityGroupData::trivial(vec![M, P], vec![P, P]).unwrap();
        assert!(matches!(standardize(&d), Err(SymmetryError::NotReduced(_))));
    }

    #[test]
    fn standardize_is_idempotent_and_class_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let d = random_valid_cocycle(&mut rng, vec![P, P, M, M], vec![P, P, P, M]);
            let sf = standardize(&d).unwrap();
            assert_eq!(standardize(&sf.data).unwrap(), sf);
            let mut lambda: Vec<UnitPhase> =
                (0..16).map(|_| UnitPhase::from_turns(rng.gen_range(0..12), 12)).collect();
            lambda[0] = UnitPhase::ONE;
            let moved = exterior_transform(&d, &lambda).unwrap();
            assert_eq!(standardize(&moved).unwrap(), sf);
        }
    }

    #[test]
    fn unitary_square_normalised_by_inverse_root() {
        let d = ParityGroupData::clifford_real(1, 0).unwrap();
        let l = d.sigma(1, 1).inv().sqrt();
        let t = exterior_transform(&d, &[UnitPhase::ONE, l]).unwrap();
        assert!(t.sigma(1, 1).is_one());
    }

    #[test]
    fn exterior_round_trip() {
        let d = ParityGroupData::ct_group(Some(P), Some(M), false).unwrap();
        let lambda = [UnitPhase::ONE, UnitPhase::I, UnitPhase::from_turns(1, 8), UnitPhase::from_turns(5, 6)];
        let inv: Vec<UnitPhase> = lambda.iter().map(|l| l.inv()).collect();
        let there = exterior_transform(&d, &lambda).unwrap();
        assert!(validate_cocycle(&there));
        assert_eq!(exterior_transform(&there, &inv).unwrap(), d);
        assert_eq!(exterior_transform(&d, &[UnitPhase::ONE; 4]).unwrap(), d);
        assert_eq!(exterior_transform(&d, &[UnitPhase::I; 4]), Err(SymmetryError::LambdaNotNormalized));
    }

    #[test]
    fn pm1_reduce_quarter_phases() {
        // Z_2^2 with one antiunitary generator and phases in {+-1, +-i}
        let base = ParityGroupData::trivial(vec![M, P], vec![P, P]).unwrap();
        let eighth = UnitPhase::from_turns(1, 8);
        let lambda = [UnitPhase::ONE, eighth, eighth, UnitPhase::I];
        let d = exterior_transform(&base, &lambda).unwrap();
        assert!(d.sigma_table().iter().all(|p| p.quarter_turns().is_some()));
        assert!(d.sigma_table().iter().any(|p| p.as_sign().is_none()));
        let r = pm1_reduce(&d, 1).unwrap();
        assert!(validate_cocycle(&r));
        assert!(r.sigma_table().iter().all(|p| p.as_sign().is_some()));
        assert_eq!(pm1_reduce(&d, 2), Err(SymmetryError::NotAntiunitary(2)));
    }
}
