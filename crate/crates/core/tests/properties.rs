use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;

use d4verify::harmonic::{aut_group_of_root_system, MatrixGroup};
use d4verify::lattice::{enumerate_shell, gram_profile, jacobi_count};
use d4verify::qseries::Tau2Table;
use d4verify::quaternion::orbit_decomposition;

fn wf4() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| aut_group_of_root_system().unwrap())
}

fn tau() -> &'static Tau2Table {
    static T: OnceLock<Tau2Table> = OnceLock::new();
    T.get_or_init(|| Tau2Table::new(2000).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wf4_permutes_every_shell(m in 1u64..60, g in 0usize..1152) {
        let s = enumerate_shell(m).unwrap();
        let sigma = &wf4().elements()[g];
        let mut image: Vec<_> = s.points().iter().map(|p| sigma.apply_int(p).unwrap()).collect();
        image.sort();
        prop_assert_eq!(&image[..], s.points());
    }

    #[test]
    fn tau2_is_multiplicative(a in 1usize..45, b in 1usize..45) {
        prop_assume!(a.gcd(&b) == 1);
        let t = tau();
        prop_assert_eq!(t.get(a * b).unwrap(), &(t.get(a).unwrap() * t.get(b).unwrap()));
    }

    #[test]
    fn orbits_partition_the_shell(m in 1u64..120) {
        let s = enumerate_shell(m).unwrap();
        let d = orbit_decomposition(&s).unwrap();
        let mut all: Vec<_> = d.orbits.concat();
        all.sort();
        prop_assert_eq!(&all[..], s.points());
        prop_assert_eq!(all.len() as u64, jacobi_count(m).unwrap());
    }

    #[test]
    fn shell_gram_profile_is_symmetric(m in 1u64..25) {
        let s = enumerate_shell(m).unwrap();
        let p = gram_profile(s.points(), s.norm()).unwrap();
        // Antipodality pairs inner product α with −α.
        for (alpha, count) in &p.counts {
            prop_assert_eq!(p.counts.get(&-alpha.clone()), Some(count));
        }
    }
}
