mod common;

use common::{elements, gen, shape, vec};
use lazard_core::modarith::{abelian_decompose, root_of_unity, Endo, PScalar, PShape, PVec};
use lazard_core::Error;
use proptest::prelude::*;

#[test]
fn vector_arithmetic() {
    let s = shape(5, &[2]);
    assert_eq!(&vec(&s, &[20]) + &vec(&s, &[10]), vec(&s, &[5]));
    let u = vec(&s, &[17]);
    assert!((&u + &u.neg()).is_zero());
    let t = shape(3, &[2, 1]);
    assert_eq!(vec(&t, &[1, 1]).scale_int(3), vec(&t, &[3, 0]));
}

#[test]
fn shape_mismatch_is_an_error() {
    let a = vec(&shape(5, &[2]), &[1]);
    let b = vec(&shape(5, &[1]), &[1]);
    assert!(matches!(a.try_add(&b), Err(Error::ShapeMismatch)));
}

#[test]
fn shape_validation() {
    assert!(PShape::new(4, vec![1]).is_err());
    assert!(PShape::new(5, vec![1, 2]).is_err());
    assert!(PShape::new(5, vec![]).is_err());
    assert!(PShape::new(5, vec![2, 0]).is_err());
}

fn brute_inverse(d: u64, m: u64) -> u64 {
    (0..m).find(|x| d * x % m == 1).unwrap()
}

#[test]
fn scalar_action_matches_brute_force_inverse() {
    let s = shape(5, &[2]);
    let got = vec(&s, &[1]).scale(&PScalar::new(2, 3).unwrap()).unwrap();
    assert_eq!(got, vec(&s, &[(2 * brute_inverse(3, 25) % 25) as i64]));
    assert_eq!(got, vec(&s, &[9]));
    let s1 = shape(5, &[1]);
    assert_eq!(vec(&s1, &[1]).scale(&PScalar::new(1, 2).unwrap()).unwrap(), vec(&s1, &[3]));
    assert!(vec(&s1, &[4]).scale(&PScalar::ZERO).unwrap().is_zero());
}

#[test]
fn denominator_divisible_by_p_is_refused() {
    let s = shape(5, &[2]);
    let r = vec(&s, &[1]).scale(&PScalar::new(1, 10).unwrap());
    assert!(matches!(r, Err(Error::NotPDivisible { .. })));
}

#[test]
fn endomorphism_ring() {
    let s = shape(5, &[1, 1]);
    let id = Endo::identity(&s);
    let zero = Endo::zero(&s);
    assert!(id.compose(&zero).is_zero());
    let swap = Endo::new(&s, vec![gen(&s, 1), gen(&s, 0)]).unwrap();
    assert!(swap.compose(&swap).is_identity());
    let f = Endo::new(&s, vec![vec(&s, &[1, 2]), vec(&s, &[3, 4])]).unwrap();
    let g = Endo::new(&s, vec![vec(&s, &[0, 1]), vec(&s, &[1, 1])]).unwrap();
    let lhs = f.compose(&(&g + &swap));
    let rhs = &f.compose(&g) + &f.compose(&swap);
    for x in elements(&s) {
        assert_eq!(lhs.apply(&x), rhs.apply(&x));
    }
}

#[test]
fn endomorphism_well_definedness() {
    let s = shape(5, &[2, 1]);
    assert!(Endo::new(&s, vec![gen(&s, 0), gen(&s, 0)]).is_err());
    assert!(Endo::new(&s, vec![gen(&s, 0), vec(&s, &[5, 0])]).is_ok());
}

#[test]
fn exp_and_log_examples() {
    let s = shape(5, &[2]);
    let d = Endo::new(&s, vec![vec(&s, &[5])]).unwrap();
    assert!(Endo::zero(&s).exp(1).unwrap().is_identity());
    let e = d.exp(2).unwrap();
    assert_eq!(e, &Endo::identity(&s) + &d);
    assert_eq!(e.apply(&vec(&s, &[1])), vec(&s, &[6]));
    let f = Endo::new(&s, vec![vec(&s, &[6])]).unwrap();
    assert_eq!(f.log(2).unwrap().apply(&vec(&s, &[1])), vec(&s, &[5]));
    assert!(Endo::identity(&s).log(1).unwrap().is_zero());
}

#[test]
fn exp_refuses_bad_bounds() {
    let s = shape(5, &[2]);
    let d = Endo::new(&s, vec![vec(&s, &[5])]).unwrap();
    assert!(matches!(d.exp(5), Err(Error::BoundTooLarge { .. })));
    assert!(matches!(d.exp(1), Err(Error::NotNilpotent(1))));
    assert!(matches!(Endo::identity(&s).exp(3), Err(Error::NotNilpotent(3))));
}

fn cyclic_table(n: usize) -> Vec<u32> {
    (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect()
}

fn product_table(a: usize, b: usize) -> Vec<u32> {
    let n = a * b;
    (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            (((x / b + y / b) % a) * b + (x % b + y % b) % b) as u32
        })
        .collect()
}

fn order_census(table: &[u32], n: usize, identity: usize) -> Vec<usize> {
    let mut census = vec![0usize; n + 1];
    for x in 0..n {
        let (mut y, mut k) = (x, 1);
        while y != identity {
            y = table[y * n + x] as usize;
            k += 1;
        }
        census[k] += 1;
    }
    census
}

#[test]
fn abelian_decomposition_examples() {
    assert_eq!(abelian_decompose(&cyclic_table(9), 9).unwrap().shape.exps(), &[2]);
    assert_eq!(abelian_decompose(&product_table(3, 3), 9).unwrap().shape.exps(), &[1, 1]);
    let t = product_table(25, 5);
    let iso = abelian_decompose(&t, 125).unwrap();
    assert_eq!(iso.shape.exps(), &[2, 1]);
    let s = iso.shape.clone();
    let rebuilt: Vec<u32> =
        (0..125 * 125).map(|k| (&PVec::from_index(&s, k / 125) + &PVec::from_index(&s, k % 125)).index() as u32).collect();
    assert_eq!(order_census(&t, 125, 0), order_census(&rebuilt, 125, 0));
}

#[test]
fn abelian_decomposition_rejects_bad_tables() {
    assert!(abelian_decompose(&cyclic_table(6), 6).is_err());
    let s3: Vec<u32> = {
        let perms = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        (0..36).map(|k| {
            let (a, b) = (perms[k / 6], perms[k % 6]);
            idx([a[b[0]], a[b[1]], a[b[2]]]) as u32
        }).collect()
    };
    assert!(abelian_decompose(&s3, 6).is_err());
}

fn brute_root(p: u64, e: u32) -> u64 {
    let m = p.pow(e);
    let pow = |x: u64, k: u64| (0..k).fold(1u64, |acc, _| acc * x % m);
    (1..m)
        .find(|&x| pow(x, p - 1) == 1 && (1..p - 1).all(|k| (pow(x, k) + m - 1) % m % p != 0))
        .unwrap()
}

#[test]
fn root_of_unity_examples() {
    assert_eq!(root_of_unity(5, 1).unwrap(), 2);
    assert_eq!(root_of_unity(3, 2).unwrap(), 8);
    for (p, e) in [(3, 1), (3, 3), (5, 2), (5, 3), (7, 1), (7, 2), (11, 2)] {
        let xi = root_of_unity(p, e).unwrap();
        assert_eq!(xi, brute_root(p, e), "p = {p}, e = {e}");
        let m = p.pow(e);
        let sum = (0..p - 1).fold((0u64, 1u64), |(s, x), _| ((s + x) % m, x * xi % m)).0;
        assert_eq!(sum, 0);
    }
    assert!(root_of_unity(2, 3).is_err());
    assert!(root_of_unity(5, 0).is_err());
}

fn arb_shape() -> impl Strategy<Value = lazard_core::modarith::Shape> {
    (prop::sample::select(vec![3u64, 5, 7]), prop::collection::vec(1u32..=3, 1..=3)).prop_map(|(p, mut e)| {
        e.sort_unstable_by(|a, b| b.cmp(a));
        shape(p, &e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_action_clears_denominator(s in arb_shape(), num in -50i64..50, den in 1i64..50, seed in any::<u64>()) {
        let q = PScalar::new(num, den).unwrap();
        let v = PVec::from_index(&s, (seed % s.order() as u64) as usize);
        match v.scale(&q) {
            Ok(w) => prop_assert_eq!(w.scale_int(q.den() as i64), v.scale_int(q.num())),
            Err(_) => prop_assert_eq!(q.den() % s.p(), 0),
        }
    }

    #[test]
    fn exp_log_are_inverse(s in arb_shape(), seed in prop::collection::vec(any::<u64>(), 9)) {
        let r = s.rank();
        let m = s.moduli();
        let images: Vec<PVec> = (0..r)
            .map(|j| {
                let coords: Vec<i64> = (0..r).map(|i| {
                    let x = seed[(i * r + j) % seed.len()] % m[i];
                    let x = if i <= j { x * s.p() % m[i] } else { x };
                    (x * (m[i] / m[i].min(m[j])) % m[i]) as i64
                }).collect();
                vec(&s, &coords)
            })
            .collect();
        let d = Endo::new(&s, images).unwrap();
        let bound = (1..s.p() as usize).find(|&k| d.pow(k).is_zero());
        if let Some(k) = bound {
            let e = d.exp(k).unwrap();
            prop_assert_eq!(e.log(k).unwrap(), d.clone());
            prop_assert_eq!(e.compose(&d.neg().exp(k).unwrap()), Endo::identity(&s));
        }
    }

    #[test]
    fn decomposition_round_trips(s in arb_shape()) {
        let n = s.order();
        prop_assume!(n <= 729);
        let table: Vec<u32> = (0..n * n).map(|k| (&PVec::from_index(&s, k / n) + &PVec::from_index(&s, k % n)).index() as u32).collect();
        let iso = abelian_decompose(&table, n).unwrap();
        prop_assert_eq!(iso.shape.exps(), s.exps());
        for a in 0..n {
            for b in (0..n).step_by(7) {
                let lhs = iso.index_of_elem[table[a * n + b] as usize];
                let rhs = (&PVec::from_index(&iso.shape, iso.index_of_elem[a]) + &PVec::from_index(&iso.shape, iso.index_of_elem[b])).index();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
