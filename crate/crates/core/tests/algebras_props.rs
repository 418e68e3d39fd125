use std::collections::BTreeMap;

use proptest::prelude::*;
use sheafline::algebras::{canonical, cartan, check_H5, squid, PathAlgebraSpec};
use sheafline::exact::Field;
use sheafline::weights::RationalPoint;

fn points(field: Field, n: usize, shift: i64) -> Vec<RationalPoint> {
    // distinct points: inf, then shift, shift+1, ...
    (0..n)
        .map(|k| if k == 0 { RationalPoint::infinity(field) } else { RationalPoint::from_i64(field, shift + k as i64) })
        .collect()
}

fn topological_order(spec: &PathAlgebraSpec) -> Vec<usize> {
    let index: BTreeMap<&str, usize> = spec.vertices().iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let n = spec.vertices().len();
    let mut indeg = vec![0; n];
    for a in spec.arrows() {
        indeg[index[a.to.as_str()]] += 1;
    }
    let mut order = Vec::new();
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        for a in spec.arrows().iter().filter(|a| index[a.from.as_str()] == v) {
            let t = index[a.to.as_str()];
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(t);
            }
        }
    }
    assert_eq!(order.len(), n, "quiver has a cycle");
    order
}

fn check(spec: &PathAlgebraSpec, weights: &[u32]) -> Result<(), TestCaseError> {
    let c = cartan(spec).unwrap();
    let n = 2 + weights.iter().map(|p| (p - 1) as usize).sum::<usize>();
    prop_assert_eq!(c.len(), n);
    let order = topological_order(spec);
    for (a, &i) in order.iter().enumerate() {
        for (b, &j) in order.iter().enumerate() {
            let want_zero = b < a;
            if a == b {
                prop_assert_eq!(c[i][j], 1);
            } else if want_zero {
                prop_assert_eq!(c[i][j], 0);
            }
        }
    }
    prop_assert!(check_H5(spec));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cartan_is_unitriangular(w in prop::collection::vec(2u32..6, 0..5), shift in -3i64..3, prime in any::<bool>()) {
        let field = if prime { Field::prime(11).unwrap() } else { Field::Rationals };
        let pts = points(field, w.len(), shift);
        check(&squid(&w, &pts).unwrap(), &w)?;
        check(&canonical(&w, &pts).unwrap(), &w)?;
    }
}
