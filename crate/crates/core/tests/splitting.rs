use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sheafline::exact::Field;
use sheafline::kronecker::{nonnegative_twist, pencil_decompose, tilt_bundle, untilt};
use sheafline::p1::{birkhoff_split, random_unimodular, BundleData, P1Label};

#[test]
fn pencil_and_birkhoff_agree_on_random_bundles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let size = 2 + i % 3;
        let b = BundleData::new(random_unimodular(&mut rng, Field::Prime(7), size, 10)).unwrap();
        let n = nonnegative_twist(&b);
        let ty = birkhoff_split(&b).ty;
        assert_eq!(ty[0] + n, 0, "twist normalization on {:?}", b.mu());
        let labels = pencil_decompose(&tilt_bundle(&b.twist(n)).unwrap()).unwrap();
        let mut got: Vec<P1Label> = labels.iter().map(|l| untilt(l).base).collect();
        got.sort();
        let want: Vec<P1Label> = ty.iter().map(|t| P1Label::LB(t + n)).collect();
        assert_eq!(got, want);
    }
}
