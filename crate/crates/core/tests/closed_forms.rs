use admkit_core::shapovalov::closed_form::{compare_affine, compare_kac};
use admkit_core::shapovalov::{depths_up_to, shapovalov_det, AlgebraEngine};

#[test]
fn virasoro_kac_determinant_to_depth_six() {
    let v = AlgebraEngine::VIRASORO;
    for n in 1..=6 {
        let d = shapovalov_det(&v, (n, 0)).unwrap();
        assert!(compare_kac(&v, (n, 0), &d).unwrap().is_some(), "depth {n}");
    }
}

#[test]
fn neveu_schwarz_determinant_to_depth_nine_halves() {
    let e = AlgebraEngine::NEVEU_SCHWARZ;
    for n2 in 1..=9 {
        let d = shapovalov_det(&e, (n2, 0)).unwrap();
        assert!(compare_kac(&e, (n2, 0), &d).unwrap().is_some(), "depth {n2}/2");
    }
}

#[test]
fn affine_determinant_to_depth_four() {
    let a = AlgebraEngine::AFFINE_SL2;
    for nu in depths_up_to(&a, 4) {
        let d = shapovalov_det(&a, nu).unwrap();
        assert!(compare_affine(nu, &d).unwrap().is_some(), "depth {nu:?}");
    }
}
