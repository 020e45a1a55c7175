use nalgebra::DMatrix;

use super::ReprError;
use crate::symmetry::{ParityGroupData, Sign, TenfoldClass, UnitPhase};

/// Finite-dimensional real *-algebra given by integer structure constants
/// in a basis that is orthonormal for `tau(a* b)`, `tau` reading off the
/// coefficient of the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    unit: usize,
    /// `mult[i * dim + j]` is `e_i e_j` as a sparse vector.
    mult: Vec<Vec<(usize, i64)>>,
    /// `star[i]` is `e_i*` as a sparse vector.
    star: Vec<Vec<(usize, i64)>>,
}

fn sparse(v: &[i64]) -> Vec<(usize, i64)> {
    v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, *x)).collect()
}

impl StructureAlgebra {
    pub fn new(dim: usize, unit: usize, mult: Vec<Vec<i64>>, star: Vec<Vec<i64>>) -> Result<Self, ReprError> {
        if mult.len() != dim * dim || star.len() != dim || unit >= dim.max(1) {
            return Err(ReprError::Shape("structure constant table has the wrong size".into()));
        }
        if mult.iter().chain(&star).any(|v| v.len() != dim) {
            return Err(ReprError::Shape("structure constant vector has the wrong length".into()));
        }
        Ok(Self { dim, unit, mult: mult.iter().map(|v| sparse(v)).collect(), star: star.iter().map(|v| sparse(v)).collect() })
    }

    /// `R` or `C` (basis `1, i`, conjugation as involution).
    pub fn scalars(base: Base) -> Self {
        match base {
            Base::Real => Self::new(1, 0, vec![vec![1]], vec![vec![1]]).expect("valid"),
            Base::Complex => Self::new(
                2,
                0,
                vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![-1, 0]],
                vec![vec![1, 0], vec![0, -1]],
            )
            .expect("valid"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn unit(&self) -> Vec<i64> {
        let mut u = vec![0; self.dim];
        u[self.unit] = 1;
        u
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.mult[i * self.dim + j]
    }

    pub fn mul_int(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                for &(k, c) in self.basis_product(i, j) {
                    out[k] += x * y * c;
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0.0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0.0) {
                for &(k, c) in self.basis_product(i, j) {
                    out[k] += x * y * c as f64;
                }
            }
        }
        out
    }

    pub fn star_int(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for &(k, c) in &self.star[i] {
                out[k] += x * c;
            }
        }
        out
    }

    pub fn star(&self, a: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            for &(k, c) in &self.star[i] {
                out[k] += x * c as f64;
            }
        }
        out
    }

    /// Matrix of `x -> a x`.
    pub fn left_matrix(&self, a: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0.0) {
            for j in 0..self.dim {
                for &(k, c) in self.basis_product(i, j) {
                    m[(k, j)] += x * c as f64;
                }
            }
        }
        m
    }

    /// Matrix of `x -> x a`.
    pub fn right_matrix(&self, a: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (j, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0.0) {
            for i in 0..self.dim {
                for &(k, c) in self.basis_product(i, j) {
                    m[(k, i)] += x * c as f64;
                }
            }
        }
        m
    }

    fn basis_vec(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Exact associativity on all basis triples.
    pub fn is_associative(&self) -> bool {
        for i in 0..self.dim {
            let ei = self.basis_vec(i);
            for j in 0..self.dim {
                let ij = self.mul_int(&ei, &self.basis_vec(j));
                for k in 0..self.dim {
                    let ek = self.basis_vec(k);
                    let left = self.mul_int(&ij, &ek);
                    let right = self.mul_int(&ei, &self.mul_int(&self.basis_vec(j), &ek));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The unit is a two-sided identity.
    pub fn has_unit(&self) -> bool {
        let u = self.unit();
        (0..self.dim).all(|i| {
            let e = self.basis_vec(i);
            self.mul_int(&u, &e) == e && self.mul_int(&e, &u) == e
        })
    }

    /// `*` is an involutive anti-automorphism.
    pub fn is_involution(&self) -> bool {
        (0..self.dim).all(|i| {
            let ei = self.basis_vec(i);
            if self.star_int(&self.star_int(&ei)) != ei {
                return false;
            }
            (0..self.dim).all(|j| {
                let ej = self.basis_vec(j);
                self.star_int(&self.mul_int(&ei, &ej)) == self.mul_int(&self.star_int(&ej), &self.star_int(&ei))
            })
        })
    }
}

/// Coefficient field of a twisted group algebra, realised over `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Real,
    Complex,
}

impl Base {
    /// `i^k` as an element of the scalars, if available.
    pub(crate) fn phase(self, p: UnitPhase) -> Result<Vec<i64>, ReprError> {
        let unsupported = || ReprError::UnsupportedPhase(p.to_string());
        let k = p.quarter_turns().ok_or_else(unsupported)?;
        match (self, k) {
            (Base::Real, 0) => Ok(vec![1]),
            (Base::Real, 2) => Ok(vec![-1]),
            (Base::Real, _) => Err(unsupported()),
            (Base::Complex, 0) => Ok(vec![1, 0]),
            (Base::Complex, 1) => Ok(vec![0, 1]),
            (Base::Complex, 2) => Ok(vec![-1, 0]),
            (Base::Complex, _) => Ok(vec![0, -1]),
        }
    }

    /// Dense row-major matrix of the action of an element with the given `phi`.
    pub(crate) fn action(self, phi: Sign) -> Vec<i64> {
        match (self, phi) {
            (Base::Real, _) => vec![1],
            (Base::Complex, Sign::Plus) => vec![1, 0, 0, 1],
            (Base::Complex, Sign::Minus) => vec![1, 0, 0, -1],
        }
    }
}

/// A finite group by multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_fn<F: Fn(usize, usize) -> usize>(order: usize, f: F) -> Result<Self, ReprError> {
        let table: Vec<usize> = (0..order * order).map(|k| f(k / order, k % order)).collect();
        if order == 0 || table.iter().any(|&x| x >= order) {
            return Err(ReprError::NotAGroup("table leaves the group".into()));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        if (0..order).any(|a| m(0, a) != a || m(a, 0) != a) {
            return Err(ReprError::NotAGroup("element 0 is not the identity".into()));
        }
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| m(a, b) == 0 && m(b, a) == 0)
                .ok_or_else(|| ReprError::NotAGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(ReprError::NotAGroup("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(Self { order, table, inverse })
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// `Z_2^n` with bitmask elements.
    pub fn elementary_abelian(n: usize) -> Self {
        Self::from_fn(1 << n, |a, b| a ^ b).expect("elementary abelian group")
    }

    /// Dihedral group of order `2n`; element `a + n*b` is `r^a s^b`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(2 * n, |x, y| {
            let (a, b, c, d) = (x % n, x / n, y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            rot + n * ((b + d) % 2)
        })
        .expect("dihedral group")
    }

    /// Quaternion group `{+-1, +-i, +-j, +-k}`; element `u + 4*sgn`, with
    /// `u` indexing `1, i, j, k` and `sgn = 1` for the negatives.
    pub fn quaternion() -> Self {
        // (unit, sign) of the product of unit quaternions a*b
        const PROD: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        Self::from_fn(8, |x, y| {
            let (u, s) = PROD[x % 4][y % 4];
            u + 4 * ((s + x / 4 + y / 4) % 2)
        })
        .expect("quaternion group")
    }

    /// `self x other`, element `(a, b)` stored as `a + |self| * b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let n = self.order;
        Self::from_fn(n * other.order, |x, y| self.mul(x % n, y % n) + n * other.mul(x / n, y / n))
            .expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// `(G, phi, c, sigma)` for an arbitrary finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCocycle {
    pub group: FiniteGroup,
    pub phi: Vec<Sign>,
    pub c: Vec<Sign>,
    pub sigma: Vec<UnitPhase>,
}

impl GroupCocycle {
    pub fn new<F>(group: FiniteGroup, phi: Vec<Sign>, c: Vec<Sign>, sigma: F) -> Result<Self, ReprError>
    where
        F: Fn(usize, usize) -> UnitPhase,
    {
        let n = group.order();
        if phi.len() != n || c.len() != n {
            return Err(ReprError::Shape("phi and c need one sign per group element".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                if phi[ab] != phi[a] * phi[b] || c[ab] != c[a] * c[b] {
                    return Err(ReprError::Shape("phi and c must be homomorphisms".into()));
                }
            }
        }
        let sigma = (0..n * n).map(|k| sigma(k / n, k % n)).collect();
        Ok(Self { group, phi, c, sigma })
    }

    pub fn untwisted(group: FiniteGroup) -> Self {
        let n = group.order();
        Self::new(group, vec![Sign::Plus; n], vec![Sign::Plus; n], |_, _| UnitPhase::ONE).expect("trivial data")
    }

    pub fn from_parity(d: &ParityGroupData) -> Self {
        let group = FiniteGroup::elementary_abelian(d.n());
        let n = group.order() as u32;
        Self {
            phi: (0..n).map(|x| d.phi(x)).collect(),
            c: (0..n).map(|x| d.c(x)).collect(),
            sigma: (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| d.sigma(x, y)).collect(),
            group,
        }
    }

    pub fn sigma(&self, a: usize, b: usize) -> UnitPhase {
        self.sigma[a * self.group.order() + b]
    }

    pub fn is_valid(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        (0..n).all(|a| self.sigma(0, a).is_one() && self.sigma(a, 0).is_one())
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        self.sigma(x, y) * self.sigma(g.mul(x, y), z)
                            == self.sigma(y, z).act(self.phi[x]) * self.sigma(x, g.mul(y, z))
                    })
                })
            })
    }
}

/// `B x| G` with `(b u_p)(b' u_q) = b beta_p(b') nu(p,q) u_{pq}` and
/// `(b u_p)* = nu(p^-1,p)* beta_{p^-1}(b*) u_{p^-1}`.
///
/// `action[p]` is `beta_p` as a dense row-major matrix on `B`, `twist[p*|G|+q]`
/// is `nu(p,q)` as an element of `B`. Basis element `e_i u_p` has index
/// `p * dim(B) + i`.
pub fn crossed_product(
    coeff: &StructureAlgebra,
    group: &FiniteGroup,
    action: &[Vec<i64>],
    twist: &[Vec<i64>],
) -> Result<StructureAlgebra, ReprError> {
    let db = coeff.dim();
    let n = group.order();
    if action.len() != n || action.iter().any(|m| m.len() != db * db) || twist.len() != n * n {
        return Err(ReprError::Shape("crossed product data has the wrong size".into()));
    }
    let apply = |p: usize, v: &[i64]| -> Vec<i64> {
        (0..db).map(|r| (0..db).map(|c| action[p][r * db + c] * v[c]).sum()).collect()
    };
    let dim = db * n;
    let basis = |i: usize| {
        let mut v = vec![0; db];
        v[i] = 1;
        v
    };
    let mut mult = vec![vec![0; dim]; dim * dim];
    for p in 0..n {
        for q in 0..n {
            let pq = group.mul(p, q);
            for i in 0..db {
                for j in 0..db {
                    let b = coeff.mul_int(&coeff.mul_int(&basis(i), &apply(p, &basis(j))), &twist[p * n + q]);
                    let out = &mut mult[(p * db + i) * dim + q * db + j];
                    out[pq * db..(pq + 1) * db].copy_from_slice(&b);
                }
            }
        }
    }
    let mut star = vec![vec![0; dim]; dim];
    for p in 0..n {
        let pi = group.inv(p);
        for i in 0..db {
            let b = coeff.mul_int(
                &coeff.star_int(&twist[pi * n + p]),
                &apply(pi, &coeff.star_int(&basis(i))),
            );
            star[p * db + i][pi * db..(pi + 1) * db].copy_from_slice(&b);
        }
    }
    StructureAlgebra::new(dim, coeff.unit_index(), mult, star)
}

/// Twisted group algebra `B x|_(alpha, sigma) G` for scalars `B`, with
/// `alpha_x` complex conjugation when `phi(x) = -1`.
pub fn twisted_crossed_product(base: Base, data: &GroupCocycle) -> Result<StructureAlgebra, ReprError> {
    if !data.is_valid() {
        return Err(ReprError::InvalidCocycle);
    }
    let n = data.group.order();
    let action: Vec<Vec<i64>> = data.phi.iter().map(|&p| base.action(p)).collect();
    let twist = (0..n * n).map(|k| base.phase(data.sigma[k])).collect::<Result<Vec<_>, _>>()?;
    crossed_product(&StructureAlgebra::scalars(base), &data.group, &action, &twist)
}

pub fn twisted_group_algebra(d: &ParityGroupData, base: Base) -> Result<StructureAlgebra, ReprError> {
    twisted_crossed_product(base, &GroupCocycle::from_parity(d))
}

/// Adds the grading operator as an extra unitary generator (the top bit),
/// with `Gamma theta_y = c(y) theta_y Gamma`.
pub fn adjoin_grading(d: &ParityGroupData) -> ParityGroupData {
    let n = d.n();
    let mut phi = d.phi_generators().to_vec();
    let mut c = d.c_generators().to_vec();
    phi.push(Sign::Plus);
    c.push(Sign::Plus);
    let low = (1u32 << n) - 1;
    ParityGroupData::from_fn(phi, c, |x, y| {
        let base = d.sigma(x & low, y & low);
        if x >> n & 1 == 1 && d.c(y & low).is_minus() {
            base * UnitPhase::MINUS_ONE
        } else {
            base
        }
    })
    .expect("one generator more than a valid input")
}

/// The ungraded algebra generated over `C` by the symmetry operators of a
/// tenfold class together with the grading.
pub fn ungraded_ct_algebra(class: TenfoldClass) -> StructureAlgebra {
    let (t, c, s) = class.symmetries();
    let d = ParityGroupData::ct_group(t, c, s).expect("at most two generators");
    twisted_group_algebra(&adjoin_grading(&d), Base::Complex).expect("CT cocycles take values +-1")
}
