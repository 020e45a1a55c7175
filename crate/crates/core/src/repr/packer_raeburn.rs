//! Finite-group stabilisation: `B x| G` against the iterated crossed
//! product `(B x| N) x| G/N` with the twisting pair `(beta, nu)`.

use nalgebra::DMatrix;

use super::{
    center_dim, crossed_product, numerical_rank, twisted_crossed_product, wedderburn, Base, FiniteGroup,
    GroupCocycle, ReprError, StructureAlgebra,
};
use crate::clifford::AlgebraStructure;
use crate::symmetry::Sign;

/// A group with a normal subgroup and a section of the quotient map
/// (the least element of each coset; the identity coset maps to `e`).
#[derive(Clone, Debug)]
pub struct FiniteExtension {
    group: FiniteGroup,
    normal: Vec<usize>,
    coset_of: Vec<usize>,
    section: Vec<usize>,
    quotient: FiniteGroup,
}

impl FiniteExtension {
    pub fn new(group: FiniteGroup, mut normal: Vec<usize>) -> Result<Self, ReprError> {
        normal.sort_unstable();
        normal.dedup();
        let n = group.order();
        let mut in_n = vec![false; n];
        for &x in &normal {
            if x >= n {
                return Err(ReprError::Shape(format!("element {x} outside the group")));
            }
            in_n[x] = true;
        }
        if normal.first() != Some(&0) || normal.iter().any(|&a| normal.iter().any(|&b| !in_n[group.mul(a, b)])) {
            return Err(ReprError::NotAGroup("normal part is not a subgroup".into()));
        }
        if (0..n).any(|x| normal.iter().any(|&m| !in_n[group.mul(group.mul(x, m), group.inv(x))])) {
            return Err(ReprError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; n];
        let mut section = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &m in &normal {
                coset_of[group.mul(x, m)] = section.len();
            }
            section.push(x);
        }
        let quotient = FiniteGroup::from_fn(section.len(), |p, q| coset_of[group.mul(section[p], section[q])])?;
        Ok(Self { group, normal, coset_of, section, quotient })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn normal(&self) -> &[usize] {
        &self.normal
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn section(&self, p: usize) -> usize {
        self.section[p]
    }

    pub fn coset(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    fn normal_index(&self, x: usize) -> usize {
        self.normal.binary_search(&x).expect("element of the normal subgroup")
    }
}

/// Inner algebra `B x| N` with the twisting pair of the quotient action.
#[derive(Clone, Debug)]
pub struct TwistingPair {
    pub inner: StructureAlgebra,
    pub quotient: FiniteGroup,
    /// `beta[p]`: dense row-major automorphism of `inner`.
    pub beta: Vec<Vec<i64>>,
    /// `nu[p * |G/N| + q]`: unitary of `inner`.
    pub nu: Vec<Vec<i64>>,
}

impl TwistingPair {
    fn apply(&self, p: usize, v: &[i64]) -> Vec<i64> {
        let d = self.inner.dim();
        (0..d).map(|r| (0..d).map(|c| self.beta[p][r * d + c] * v[c]).sum()).collect()
    }

    fn nu(&self, p: usize, q: usize) -> &[i64] {
        &self.nu[p * self.quotient.order() + q]
    }

    /// Normalisation, `beta_p` a *-automorphism, `beta_p beta_q = Ad nu(p,q)
    /// beta_pq` and `beta_p(nu(q,r)) nu(p,qr) = nu(p,q) nu(pq,r)`, all exact.
    pub fn identities_hold(&self) -> bool {
        let a = &self.inner;
        let d = a.dim();
        let g = &self.quotient;
        let n = g.order();
        let unit = a.unit();
        let basis = |i: usize| {
            let mut v = vec![0; d];
            v[i] = 1;
            v
        };
        for i in 0..d {
            if self.apply(0, &basis(i)) != basis(i) {
                return false;
            }
        }
        for p in 0..n {
            if self.nu(0, p) != unit.as_slice() || self.nu(p, 0) != unit.as_slice() {
                return false;
            }
            for i in 0..d {
                let bi = self.apply(p, &basis(i));
                if self.apply(p, &a.star_int(&basis(i))) != a.star_int(&bi) {
                    return false;
                }
                for j in 0..d {
                    if self.apply(p, &a.mul_int(&basis(i), &basis(j))) != a.mul_int(&bi, &self.apply(p, &basis(j))) {
                        return false;
                    }
                }
            }
            for q in 0..n {
                let pq = g.mul(p, q);
                let nu = self.nu(p, q);
                let nu_star = a.star_int(nu);
                if a.mul_int(nu, &nu_star) != unit {
                    return false;
                }
                for i in 0..d {
                    let lhs = self.apply(p, &self.apply(q, &basis(i)));
                    let rhs = a.mul_int(&a.mul_int(nu, &self.apply(pq, &basis(i))), &nu_star);
                    if lhs != rhs {
                        return false;
                    }
                }
                for r in 0..n {
                    let lhs = a.mul_int(&self.apply(p, self.nu(q, r)), self.nu(p, g.mul(q, r)));
                    let rhs = a.mul_int(nu, self.nu(pq, r));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn iterated_algebra(&self) -> Result<StructureAlgebra, ReprError> {
        crossed_product(&self.inner, &self.quotient, &self.beta, &self.nu)
    }
}

fn restricted(ext: &FiniteExtension, data: &GroupCocycle) -> Result<GroupCocycle, ReprError> {
    let nn = ext.normal.len();
    let g = &data.group;
    let sub = FiniteGroup::from_fn(nn, |a, b| ext.normal_index(g.mul(ext.normal[a], ext.normal[b])))?;
    GroupCocycle::new(
        sub,
        ext.normal.iter().map(|&x| data.phi[x]).collect(),
        ext.normal.iter().map(|&x| data.c[x]).collect(),
        |a, b| data.sigma(ext.normal[a], ext.normal[b]),
    )
}

/// `beta_p = gamma_{s_p}` with `gamma_x(b u_n) = alpha_x(b) sigma(x,n)
/// sigma(xnx^-1,x)^-1 u_{xnx^-1}`, and `nu(p,q) = sigma(s_p,s_q)
/// sigma(m,s_pq)^-1 u_m` where `m = s_p s_q s_pq^-1`.
pub fn packer_raeburn_decompose(
    ext: &FiniteExtension,
    data: &GroupCocycle,
    base: Base,
) -> Result<TwistingPair, ReprError> {
    if data.group != ext.group {
        return Err(ReprError::Shape("cocycle and extension live on different groups".into()));
    }
    if ext.normal.iter().any(|&x| data.c[x] == Sign::Minus) {
        return Err(ReprError::NotInKernelOfC);
    }
    if !data.is_valid() {
        return Err(ReprError::InvalidCocycle);
    }
    let g = &ext.group;
    let inner = twisted_crossed_product(base, &restricted(ext, data)?)?;
    let db = StructureAlgebra::scalars(base).dim();
    let scalars = StructureAlgebra::scalars(base);
    let di = inner.dim();
    let nq = ext.quotient.order();

    let mut beta = Vec::with_capacity(nq);
    for p in 0..nq {
        let x = ext.section[p];
        let alpha = base.action(data.phi[x]);
        let mut m = vec![0i64; di * di];
        for (ni, &nel) in ext.normal.iter().enumerate() {
            let conj = g.mul(g.mul(x, nel), g.inv(x));
            let phase = base.phase(data.sigma(x, nel) * data.sigma(conj, x).inv())?;
            let target = ext.normal_index(conj);
            for i in 0..db {
                let ai: Vec<i64> = (0..db).map(|r| alpha[r * db + i]).collect();
                let img = scalars.mul_int(&ai, &phase);
                for (k, &v) in img.iter().enumerate() {
                    m[(target * db + k) * di + ni * db + i] = v;
                }
            }
        }
        beta.push(m);
    }

    let mut nu = Vec::with_capacity(nq * nq);
    for p in 0..nq {
        for q in 0..nq {
            let (sp, sq, spq) = (ext.section[p], ext.section[q], ext.section[ext.quotient.mul(p, q)]);
            let m = g.mul(g.mul(sp, sq), g.inv(spq));
            let phase = base.phase(data.sigma(sp, sq) * data.sigma(m, spq).inv())?;
            let mut v = vec![0i64; di];
            let t = ext.normal_index(m);
            v[t * db..(t + 1) * db].copy_from_slice(&phase);
            nu.push(v);
        }
    }
    Ok(TwistingPair { inner, quotient: ext.quotient.clone(), beta, nu })
}

/// Both sides of the stabilisation, compared.
#[derive(Clone, Debug)]
pub struct PackerRaeburnReport {
    pub full_dim: usize,
    pub iterated_dim: usize,
    pub full_center_dim: usize,
    pub iterated_center_dim: usize,
    pub full_structure: AlgebraStructure,
    pub iterated_structure: AlgebraStructure,
    /// Twisted-pair identities for `(beta, nu)`.
    pub identities_hold: bool,
    /// `b u_n u_p -> b u_n u_{s_p}` is a bijective *-homomorphism.
    pub explicit_isomorphism: bool,
}

impl PackerRaeburnReport {
    pub fn passed(&self) -> bool {
        self.full_dim == self.iterated_dim
            && self.full_center_dim == self.iterated_center_dim
            && self.full_structure == self.iterated_structure
            && self.identities_hold
            && self.explicit_isomorphism
    }
}

pub fn packer_raeburn_verify(
    ext: &FiniteExtension,
    data: &GroupCocycle,
    base: Base,
) -> Result<PackerRaeburnReport, ReprError> {
    let pair = packer_raeburn_decompose(ext, data, base)?;
    let full = twisted_crossed_product(base, data)?;
    let iterated = pair.iterated_algebra()?;
    let explicit_isomorphism = full.dim() == iterated.dim() && check_isomorphism(ext, &pair, &full, &iterated, base);
    Ok(PackerRaeburnReport {
        full_dim: full.dim(),
        iterated_dim: iterated.dim(),
        full_center_dim: center_dim(&full),
        iterated_center_dim: center_dim(&iterated),
        full_structure: wedderburn(&full)?,
        iterated_structure: wedderburn(&iterated)?,
        identities_hold: pair.identities_hold(),
        explicit_isomorphism,
    })
}

fn check_isomorphism(
    ext: &FiniteExtension,
    pair: &TwistingPair,
    full: &StructureAlgebra,
    iterated: &StructureAlgebra,
    base: Base,
) -> bool {
    let db = StructureAlgebra::scalars(base).dim();
    let di = pair.inner.dim();
    let d = iterated.dim();
    let basis = |n: usize, i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    // image of each iterated basis element e_i u_n u_p
    let images: Vec<Vec<i64>> = (0..d)
        .map(|k| {
            let (p, rest) = (k / di, k % di);
            let (ni, i) = (rest / db, rest % db);
            let left = basis(full.dim(), ext.normal[ni] * db + i);
            let right = basis(full.dim(), ext.section[p] * db + full.unit_index());
            full.mul_int(&left, &right)
        })
        .collect();
    let psi = |v: &[i64]| -> Vec<i64> {
        let mut out = vec![0; full.dim()];
        for (k, &x) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (t, &y) in images[k].iter().enumerate() {
                out[t] += x * y;
            }
        }
        out
    };
    for a in 0..d {
        let ea = basis(d, a);
        if psi(&iterated.star_int(&ea)) != full.star_int(&images[a]) {
            return false;
        }
        for b in 0..d {
            if psi(&iterated.mul_int(&ea, &basis(d, b))) != full.mul_int(&images[a], &images[b]) {
                return false;
            }
        }
    }
    let m = DMatrix::from_fn(full.dim(), d, |r, c| images[c][r] as f64);
    numerical_rank(&m, 1e-10) == d
}

/// A fixed extension with its twisted action, used by the verification suites.
#[derive(Clone, Debug)]
pub struct PackerRaeburnCase {
    pub name: &'static str,
    pub extension: FiniteExtension,
    pub data: GroupCocycle,
    pub base: Base,
}

impl PackerRaeburnCase {
    pub fn verify(&self) -> Result<PackerRaeburnReport, ReprError> {
        packer_raeburn_verify(&self.extension, &self.data, self.base)
    }
}

/// Forgets the grading, keeping `phi` and `sigma`.
fn ungraded(d: GroupCocycle) -> GroupCocycle {
    GroupCocycle { c: vec![Sign::Plus; d.c.len()], ..d }
}

/// Ten extensions of order at most 16, twisted and untwisted, over R and C.
pub fn packer_raeburn_suite() -> Vec<PackerRaeburnCase> {
    use crate::symmetry::{ParityGroupData, UnitPhase};
    let ext = |g: &FiniteGroup, n: &[usize]| FiniteExtension::new(g.clone(), n.to_vec()).expect("normal subgroup");
    let parity = |d: ParityGroupData| ungraded(GroupCocycle::from_parity(&d));
    let ct = |t, c| ParityGroupData::ct_group(t, c, false).expect("CT group");
    let (p, m) = (Some(Sign::Plus), Some(Sign::Minus));

    let z2z2 = FiniteGroup::elementary_abelian(2);
    let z4 = FiniteGroup::cyclic(4);
    let z4z2 = z4.product(&FiniteGroup::cyclic(2));
    let bilinear = GroupCocycle::new(z4z2.clone(), vec![Sign::Plus; 8], vec![Sign::Plus; 8], |x, y| {
        if (x % 4) * (y / 4) % 2 == 1 {
            UnitPhase::MINUS_ONE
        } else {
            UnitPhase::ONE
        }
    })
    .expect("bilinear cocycle");
    let antiunitary_z4 = GroupCocycle::new(
        z4.clone(),
        (0..4).map(|a| if a % 2 == 1 { Sign::Minus } else { Sign::Plus }).collect(),
        vec![Sign::Plus; 4],
        |_, _| UnitPhase::ONE,
    )
    .expect("untwisted");

    vec![
        PackerRaeburnCase {
            name: "Z2^2 / Z2, Cl(2,0) twist, real",
            extension: ext(&z2z2, &[0, 1]),
            data: parity(ParityGroupData::clifford_real(2, 0).expect("small")),
            base: Base::Real,
        },
        PackerRaeburnCase {
            name: "Z4 / Z2, complex",
            extension: ext(&z4, &[0, 2]),
            data: GroupCocycle::untwisted(z4.clone()),
            base: Base::Complex,
        },
        PackerRaeburnCase {
            name: "CT(T+1,C-1) / {1,S}, complex",
            extension: ext(&z2z2, &[0, 3]),
            data: parity(ct(p, m)),
            base: Base::Complex,
        },
        PackerRaeburnCase {
            name: "CT(T-1,C+1) / {1,T}, complex",
            extension: ext(&z2z2, &[0, 1]),
            data: GroupCocycle::from_parity(&ct(m, p)),
            base: Base::Complex,
        },
        PackerRaeburnCase {
            name: "D4 / Z4, real",
            extension: ext(&FiniteGroup::dihedral(4), &[0, 1, 2, 3]),
            data: GroupCocycle::untwisted(FiniteGroup::dihedral(4)),
            base: Base::Real,
        },
        PackerRaeburnCase {
            name: "S3 / Z3, complex",
            extension: ext(&FiniteGroup::dihedral(3), &[0, 1, 2]),
            data: GroupCocycle::untwisted(FiniteGroup::dihedral(3)),
            base: Base::Complex,
        },
        PackerRaeburnCase {
            name: "Z4xZ2 / Z2, bilinear twist, complex",
            extension: ext(&z4z2, &[0, 4]),
            data: bilinear,
            base: Base::Complex,
        },
        PackerRaeburnCase {
            name: "Z2^4 / Z2^2, Cl(2,2) twist, real",
            extension: ext(&FiniteGroup::elementary_abelian(4), &[0, 1, 2, 3]),
            data: parity(ParityGroupData::clifford_real(2, 2).expect("small")),
            base: Base::Real,
        },
        PackerRaeburnCase {
            name: "Z4 antiunitary generator / Z2, complex",
            extension: ext(&z4, &[0, 2]),
            data: antiunitary_z4,
            base: Base::Complex,
        },
        PackerRaeburnCase {
            name: "Q8 / center, real",
            extension: ext(&FiniteGroup::quaternion(), &[0, 4]),
            data: GroupCocycle::untwisted(FiniteGroup::quaternion()),
            base: Base::Real,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::UnitPhase;

    #[test]
    fn direct_product_has_trivial_nu() {
        let g = FiniteGroup::elementary_abelian(2);
        let ext = FiniteExtension::new(g.clone(), vec![0, 1]).unwrap();
        let pair = packer_raeburn_decompose(&ext, &GroupCocycle::untwisted(g), Base::Real).unwrap();
        assert!(pair.nu.iter().all(|v| *v == pair.inner.unit()));
    }

    #[test]
    fn z4_over_z2_nu_is_the_extension_class() {
        let g = FiniteGroup::cyclic(4);
        let ext = FiniteExtension::new(g.clone(), vec![0, 2]).unwrap();
        assert_eq!(ext.section(1), 1);
        let pair = packer_raeburn_decompose(&ext, &GroupCocycle::untwisted(g), Base::Complex).unwrap();
        // nu(1,1) = u_2, the non-identity element of N, at inner index 1 * dim(C)
        assert_eq!(pair.nu[3], vec![0, 0, 1, 0]);
        assert_eq!(pair.quotient.order() * pair.inner.dim(), 8);
    }

    #[test]
    fn z4_over_z2_verifies() {
        let g = FiniteGroup::cyclic(4);
        let ext = FiniteExtension::new(g.clone(), vec![0, 2]).unwrap();
        let report = packer_raeburn_verify(&ext, &GroupCocycle::untwisted(g), Base::Complex).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.full_structure.to_string(), "C + C + C + C");
    }

    #[test]
    fn fixed_suite_passes() {
        for case in packer_raeburn_suite() {
            let report = case.verify().unwrap();
            assert!(report.passed(), "{}: {report:?}", case.name);
        }
    }

    #[test]
    fn rejects_bad_subgroups() {
        let d4 = FiniteGroup::dihedral(4);
        assert!(matches!(FiniteExtension::new(d4, vec![0, 4]), Err(ReprError::NotNormal)));
        let g = FiniteGroup::cyclic(2);
        let data = GroupCocycle::new(g.clone(), vec![Sign::Plus; 2], vec![Sign::Plus, Sign::Minus], |_, _| {
            UnitPhase::ONE
        })
        .unwrap();
        let ext = FiniteExtension::new(g, vec![0, 1]).unwrap();
        assert!(matches!(packer_raeburn_decompose(&ext, &data, Base::Real), Err(ReprError::NotInKernelOfC)));
    }
}
