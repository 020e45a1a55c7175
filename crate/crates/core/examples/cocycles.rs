//! Twisted cocycles on `Z_2^n`: validity, the reduction to at most two
//! antiunitary generators, the standard form and the sign-valued reduction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tenfold::symmetry::{
    exterior_transform, pm1_reduce, random_valid_cocycle, reduce_antiunitaries, standardize, validate_cocycle,
    ParityGroupData, Sign, UnitPhase,
};

fn main() {
    use Sign::{Minus as M, Plus as P};
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // three antiunitaries get folded into two
    let d = random_valid_cocycle(&mut rng, vec![M, M, M, P], vec![P, M, P, M]);
    println!("valid: {}", validate_cocycle(&d));
    let (reduced, change) = reduce_antiunitaries(&d);
    println!("new generators (old bitmasks): {:?}, kernel rank {}", change.generators, change.kernel_rank);

    let std_form = standardize(&reduced).unwrap();
    println!("unitary squares {:?}", std_form.u_squares);
    println!("antiunitary squares {:?}", std_form.a_squares);

    // the squares are invariant under exterior transforms
    let lambda: Vec<UnitPhase> = (0..reduced.order())
        .map(|x| if x == 0 { UnitPhase::ONE } else { UnitPhase::from_turns(x as i64, 8) })
        .collect();
    let moved = exterior_transform(&reduced, &lambda).unwrap();
    println!("after a coboundary: {:?}", standardize(&moved).unwrap().a_squares);

    // CT group with T^2 = -1, C^2 = +1 (class DIII), then a sign-valued representative
    let ct = ParityGroupData::ct_group(Some(M), Some(P), false).unwrap();
    let twisted = exterior_transform(&ct, &[UnitPhase::ONE, UnitPhase::I, UnitPhase::from_turns(1, 8), UnitPhase::MINUS_I])
        .unwrap();
    let signs = pm1_reduce(&twisted, 1).unwrap();
    let table: Vec<String> = signs.sigma_table().iter().map(|p| p.to_string()).collect();
    println!("sign-valued cocycle: [{}]", table.join(", "));
}
