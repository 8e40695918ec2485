mod common;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seifert_psc::lattice;
use seifert_psc::obstruction::{self, Options};
use seifert_psc::seifert::{self, Orientation, Summand};
use seifert_psc::stoffregen::Provenance;

use common::{coprime_triple, d_from_tau, form};

#[test]
fn lattice_d_matches_tau_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let t = coprime_triple(&mut rng, 3000);
        let r = lattice::min_characteristic_norm(&form(&t)).unwrap();
        assert_eq!(r.d, d_from_tau(&t), "{t:?}");
    }
}

#[test]
fn four_fiber_spaces() {
    for m in [[2, 3, 5, 7], [2, 3, 5, 11], [3, 4, 5, 7]] {
        let r = lattice::min_characteristic_norm(&form(&m)).unwrap();
        assert_eq!(r.d, d_from_tau(&m), "{m:?}");
    }
}

#[test]
fn orientation_reversal_negates_summand_invariants() {
    for m in [[2, 3, 5], [2, 3, 7], [2, 3, 11], [2, 7, 27]] {
        let std = Summand::new(&m, Orientation::Positive);
        let rev = Summand::new(&m, Orientation::Reversed);
        assert_eq!(
            lattice::delta_of(&rev).unwrap(),
            -lattice::delta_of(&std).unwrap()
        );

        let p = obstruction::analyze(
            &seifert::parse(&std.to_string()).unwrap(),
            Options::default(),
        )
        .unwrap();
        let n = obstruction::analyze(
            &seifert::parse(&rev.to_string()).unwrap(),
            Options::default(),
        )
        .unwrap();
        assert_eq!(n.mu_bar_total, -p.mu_bar_total);
        assert_eq!(n.manolescu.provenance, Provenance::SinglePositive);
        // mirror: (alpha, beta, gamma) -> (-gamma, -beta, -alpha)
        let (a, b, g) = (p.manolescu.alpha, p.manolescu.beta, p.manolescu.gamma);
        assert_eq!(
            (n.manolescu.alpha, n.manolescu.beta, n.manolescu.gamma),
            (-g, -b, -a),
            "{m:?}"
        );
    }
}

#[test]
fn summand_order_does_not_matter() {
    let a = "Sigma(2,3,11) # Sigma(2,7,27) # Sigma(2,3,7)";
    let b = "Sigma(2,3,7) # Sigma(2,3,11) # Sigma(2,7,27)";
    let ra = obstruction::analyze(&seifert::parse(a).unwrap(), Options::default()).unwrap();
    let rb = obstruction::analyze(&seifert::parse(b).unwrap(), Options::default()).unwrap();
    assert_eq!(ra.manolescu, rb.manolescu);
}

#[test]
fn duplication_is_monotone_for_the_families() {
    for base in ["Sigma(2,3,11)", "Sigma(2,5,19)", "Sigma(2,7,27)"] {
        let mut prev = None;
        for j in 1..=6 {
            let e = format!("{j}*{base}");
            let r = obstruction::analyze(&seifert::parse(&e).unwrap(), Options::default()).unwrap();
            let m = &r.manolescu;
            let cur = (m.alpha, m.beta, m.gamma);
            if let Some((a, b, g)) = prev {
                assert!(cur.0 >= a && cur.1 >= b && cur.2 >= g, "{e}: {cur:?}");
            }
            prev = Some(cur);
        }
    }
}

#[test]
fn huge_multiplicities_parse_and_normalize() {
    let big = BigInt::parse_bytes(b"100000000000000000000000000000000000001", 10).unwrap();
    let inv = seifert::normalize(&[BigInt::from(2), BigInt::from(3), big.clone()]);
    assert!(inv.is_ok());
    let p = seifert::parse(&format!("Sigma(2,3,{big})")).unwrap();
    assert_eq!(p.to_string(), format!("Sigma(2,3,{big})"));
}
