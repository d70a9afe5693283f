mod common;

use common::*;
use lazard_core::algebra::LieOps;
use lazard_core::freelie::tables;
use lazard_core::lazcorr::*;
use lazard_core::liering::{FinGroup, LieRingSC};
use lazard_core::modarith::{mod_inv, root_of_unity, Endo, PScalar, PVec, Shape};
use lazard_core::postlie::{IdealType, PostLieRing};
use lazard_core::skewbrace::{lambda_search, p_automorphisms, Perm, SkewBrace};
use lazard_core::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn frac(n: i64, d: i64) -> PScalar {
    PScalar::new(n, d).unwrap()
}

fn ad(ring: &LieRingSC, b: &PVec) -> Endo {
    Endo::from_fn(ring.shape(), |v| ring.bracket(b, v)).unwrap()
}

fn cyclic(n: usize) -> FinGroup {
    FinGroup::from_fn(n, 0, |a, b| (a + b) % n).unwrap()
}

fn elementary(p: usize) -> FinGroup {
    FinGroup::from_fn(p * p, 0, |a, b| ((a / p + b / p) % p) * p + (a % p + b % p) % p).unwrap()
}

fn lazard_braces(dot: &FinGroup) -> Vec<SkewBrace> {
    lambda_search(dot, &p_automorphisms(dot)).unwrap().into_iter().filter(|b| b.is_lazard()).collect()
}

/// `Σ_{j=1}^{p−1} c_j a^j` in `Z/q` for an element `a` of the maximal ideal.
fn truncated_series(a: u64, q: u64, p: u64, coeff: impl Fn(u64) -> (i64, u64)) -> u64 {
    let mut acc = 0i128;
    let mut power = 1u64;
    for j in 1..p {
        power = power * a % q;
        let (num, den) = coeff(j);
        let t = (num as i128).rem_euclid(q as i128) * power as i128 % q as i128 * mod_inv(den % q, q).unwrap() as i128;
        acc = (acc + t) % q as i128;
    }
    acc as u64
}

fn exp_minus_one(a: u64, q: u64, p: u64) -> u64 {
    truncated_series(a, q, p, |j| (1, (1..=j).product()))
}

fn log_one_plus(a: u64, q: u64, p: u64) -> u64 {
    truncated_series(a, q, p, |j| (if j % 2 == 1 { 1 } else { -1 }, j))
}

fn lambda_map(b: &SkewBrace, a: usize, v: &PVec) -> PVec {
    PVec::from_index(v.shape(), b.lambda(a)[v.index()] as usize)
}

fn sample_rings() -> Vec<PostLieRing> {
    let mut rng = StdRng::seed_from_u64(11);
    let s = shape(5, &[1, 1, 1]);
    vec![
        PostLieRing::trivial(heisenberg(5)),
        PostLieRing::negative_bracket(heisenberg(5)),
        PostLieRing::negative_bracket(filiform(5)),
        square_to_second(5),
        square_to_second(3),
        radical(5, 3),
        radical(5, 4),
        radical(3, 3),
        random_pre_lie(&mut rng, &s),
        random_pre_lie(&mut rng, &shape(5, &[2, 1])),
        PostLieRing::negative_bracket(random_nilpotent_lie(&mut rng, &shape(3, &[1, 1, 1]))),
    ]
}

#[test]
fn v_examples() {
    let p = square_to_second(5);
    let s = p.shape().clone();
    let a = gen(&s, 0);
    assert_eq!(eval_v(&p, &a, &Endo::zero(&s)).unwrap(), a);
    assert_eq!(eval_v(&p, &a, &p.left_mult(&a)).unwrap(), vec(&s, &[1, 3]));
    assert_eq!(flows_w(&p).unwrap()[a.index()], vec(&s, &[1, 3]).index());
}

#[test]
fn v_matches_low_degree_formula() {
    for ring in [heisenberg(5), filiform(5)] {
        let s = ring.shape().clone();
        let all = elements(&s);
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(11) {
                let x = ad(&ring, b);
                let xa = x.apply(a);
                let inner = ring.bracket(a, &xa);
                let expected = [
                    a.clone(),
                    xa.scale(&frac(1, 2)).unwrap(),
                    x.apply(&xa).scale(&frac(1, 6)).unwrap(),
                    inner.scale(&frac(1, 12)).unwrap(),
                    (&x.apply(&inner) + &x.pow(3).apply(a)).scale(&frac(1, 24)).unwrap(),
                ]
                .iter()
                .fold(PVec::zero(&s), |acc, t| &acc + t);
                assert_eq!(eval_v_truncated(&ring, a, &x, 4).unwrap(), expected, "a = {a}, b = {b}");
            }
        }
    }
}

#[test]
fn abelian_closed_forms() {
    let mut rng = StdRng::seed_from_u64(3);
    for s in [shape(5, &[1, 1, 1]), shape(5, &[2, 1]), shape(7, &[1, 1, 1])] {
        let p = random_pre_lie(&mut rng, &s);
        let b = construct_s(&p).unwrap();
        let omega = omega_map(&b).unwrap();
        let top = s.p() as i64;
        for a in elements(&s) {
            for c in elements(&s).iter().step_by(5) {
                let x = p.left_mult(c);
                let mut term = a.clone();
                let mut expected = PVec::zero(&s);
                let mut fact = 1;
                for k in 1..top {
                    fact *= k;
                    expected = &expected + &term.scale(&frac(1, fact)).unwrap();
                    term = x.apply(&term);
                }
                assert_eq!(eval_v(&p, &a, &x).unwrap(), expected);
            }
            let mut term = &lambda_map(&b, a.index(), &a) - &a;
            let mut expected = a.clone();
            for k in 2..top {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                expected = &expected + &term.scale(&frac(sign, k)).unwrap();
                term = &lambda_map(&b, a.index(), &term) - &term;
            }
            assert_eq!(omega[a.index()], expected.index(), "a = {a}");
        }
    }
}

#[test]
fn flows_are_identity_without_triangle() {
    let mut rng = StdRng::seed_from_u64(5);
    for base in [heisenberg(5), filiform(5), random_nilpotent_lie(&mut rng, &shape(3, &[2, 1]))] {
        for p in [PostLieRing::trivial(base.clone()), PostLieRing::negative_bracket(base)] {
            let w = flows_w(&p).unwrap();
            assert!(w.iter().enumerate().all(|(i, &x)| i == x));
            let b = construct_s(&p).unwrap();
            assert!(omega_map(&b).unwrap().iter().enumerate().all(|(i, &x)| i == x));
        }
    }
    let p = PostLieRing::trivial(heisenberg(5));
    assert!(construct_s(&p).unwrap().lambdas().iter().all(|l| l.iter().enumerate().all(|(i, &x)| i == x as usize)));
}

#[test]
fn radical_ring() {
    for (p, m) in [(5u64, 3u32), (5, 4), (3, 3), (7, 3)] {
        let q = p.pow(m);
        let n = (q / p) as usize;
        let post = radical(p, m);
        let w = flows_w(&post).unwrap();
        let brace = construct_s(&post).unwrap();
        let omega = omega_map(&brace).unwrap();
        for i in 0..n {
            let a = p * i as u64;
            assert_eq!(w[i] as u64 * p, exp_minus_one(a, q, p), "W({a}) mod {q}");
            assert_eq!(omega[i] as u64 * p, log_one_plus(a, q, p), "Ω({a}) mod {q}");
        }
        assert_eq!(brace, radical_brace(p, m));
        let c = construct_l(&radical_brace(p, m)).unwrap();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(c.post.triangle(&c.vector(x), &c.vector(y)), c.vector(p as usize * x * y % n));
            }
        }
    }
    let post = radical(5, 3);
    assert_eq!(flows_w(&post).unwrap()[1], 16);
    assert_eq!(omega_map(&construct_s(&post).unwrap()).unwrap()[16], 1);
}

#[test]
fn u_examples() {
    let b = radical_brace(5, 3);
    let id: Perm = (0..25).collect();
    for a in 0..25 {
        assert_eq!(eval_u(&b, a, &id).unwrap(), a);
    }
    assert_eq!(eval_u(&b, 16, b.lambda(16)).unwrap(), 1);
    let wild: Perm = (0..25u32).map(|x| 2 * x % 25).collect();
    assert!(matches!(eval_u(&b, 1, &wild), Err(Error::TheoremViolation(_))));
}

/// `a (a λ⁻¹(a)⁻¹)^{−1/2}` evaluated in the multiplicative group.
fn second_order_word(dot: &FinGroup, a: usize, alpha: &Perm) -> usize {
    let inv_alpha = {
        let mut v = vec![0usize; alpha.len()];
        for (i, &x) in alpha.iter().enumerate() {
            v[x as usize] = i;
        }
        v
    };
    let t = dot.mul(a, dot.inv(inv_alpha[a]));
    dot.mul(a, dot.inv(dot.root(t, 2).unwrap()))
}

#[test]
fn u_agrees_with_second_order_word() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut rings = vec![radical(5, 3), square_to_second(5), PostLieRing::negative_bracket(heisenberg(5))];
    rings.push(random_pre_lie(&mut rng, &shape(5, &[1, 1])));
    for p in rings {
        let b = construct_s(&p).unwrap();
        assert_eq!(b.lazard_class().unwrap(), 2);
        for a in 0..b.order() {
            let u = eval_u(&b, a, b.lambda(a)).unwrap();
            assert_eq!(u, second_order_word(b.dot(), a, b.lambda(a)));
        }
    }
}

#[test]
fn omega_inverts_w() {
    for p in sample_rings() {
        let w = flows_w(&p).unwrap();
        let omega = omega_map(&construct_s(&p).unwrap()).unwrap();
        assert!((0..p.order()).all(|a| omega[w[a]] == a));
    }
}

#[test]
fn exp_log_bridge() {
    for p in sample_rings() {
        let k = p.lazard_class().unwrap();
        let w = flows_w(&p).unwrap();
        let b = construct_s(&p).unwrap();
        let s = p.shape().clone();
        for i in 0..p.order() {
            let a = PVec::from_index(&s, i);
            let e = p.left_mult(&a).exp(k.max(1)).unwrap();
            assert!(elements(&s).iter().all(|v| lambda_map(&b, w[i], v) == e.apply(v)));
        }
    }
}

#[test]
fn round_trips_from_post_lie() {
    for p in sample_rings() {
        let c = construct_l(&construct_s(&p).unwrap()).unwrap();
        assert_eq!(c.post, p);
        assert!(c.index_of.iter().enumerate().all(|(i, &x)| i == x));
    }
}

#[test]
fn round_trips_from_braces() {
    let groups = [cyclic(9), elementary(3), cyclic(25), elementary(5), cyclic(27)];
    for dot in groups {
        let braces = lazard_braces(&dot);
        assert!(!braces.is_empty());
        for b in braces {
            assert_eq!(round_trip_brace(&b).unwrap(), b);
            let c = construct_l(&b).unwrap();
            assert_eq!(c.post.l_class(), b.l_class());
        }
    }
}

#[test]
fn l_class_is_preserved() {
    for p in sample_rings() {
        let b = construct_s(&p).unwrap();
        assert_eq!(b.l_class(), p.l_class());
        assert_eq!(b.nilpotency_decomposition().unwrap(), p.nilpotency_decomposition().unwrap());
    }
}

fn invert(shape: &Shape, f: &Endo) -> Vec<usize> {
    let mut inv = vec![0; shape.order()];
    for v in elements(shape) {
        inv[f.apply(&v).index()] = v.index();
    }
    inv
}

fn transport(p: &PostLieRing, f: &Endo) -> (PostLieRing, Vec<usize>) {
    let s = p.shape().clone();
    let inv = invert(&s, f);
    let back = |v: &PVec| PVec::from_index(&s, inv[v.index()]);
    let r = s.rank();
    let mut brackets = Vec::new();
    let mut tri = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let (x, y) = (back(&gen(&s, i)), back(&gen(&s, j)));
            brackets.push(f.apply(&p.base().bracket(&x, &y)));
            tri.push(f.apply(&p.triangle(&x, &y)));
        }
    }
    let base = LieRingSC::from_matrix(&s, brackets).unwrap();
    (PostLieRing::from_matrix(base, tri).unwrap(), elements(&s).iter().map(|v| f.apply(v).index()).collect())
}

#[test]
fn constructions_are_functorial() {
    let mut rng = StdRng::seed_from_u64(21);
    for p in sample_rings() {
        let s = p.shape().clone();
        let r = s.rank();
        let images = (0..r)
            .map(|i| {
                let mut v = gen(&s, i);
                for j in i + 1..r {
                    let k = rand::Rng::gen_range(&mut rng, 0..s.p() as i64);
                    v = &v + &gen(&s, j).scale_int(k * (s.moduli()[j] / s.moduli()[i].min(s.moduli()[j])) as i64);
                }
                v
            })
            .collect();
        let Ok(f) = Endo::new(&s, images) else { continue };
        let (q, map) = transport(&p, &f);
        assert!(q.verify().ok());
        let (bp, bq) = (construct_s(&p).unwrap(), construct_s(&q).unwrap());
        for x in 0..p.order() {
            for y in 0..p.order() {
                assert_eq!(map[bp.circ().mul(x, y)], bq.circ().mul(map[x], map[y]));
                assert_eq!(map[bp.dot().mul(x, y)], bq.dot().mul(map[x], map[y]));
            }
        }
        let cq = construct_l(&bq).unwrap();
        assert_eq!(cq.post, q);
    }
}

#[test]
fn semidirect_bch_is_split() {
    for ring in [heisenberg(5), filiform(5)] {
        let s = ring.shape().clone();
        let ops = SemiDirect { ring: &ring };
        let all = elements(&s);
        for (i, a) in all.iter().enumerate().step_by(13) {
            for (j, b) in all.iter().enumerate().step_by(17) {
                let (x, y) = (ad(&ring, &all[(i * 7 + 3) % all.len()]), ad(&ring, &all[(j * 5 + 1) % all.len()]));
                let prod = tables().bch.eval(&ops, &(a.clone(), x.clone()), &(b.clone(), y.clone()), 4).unwrap();
                let lhs = eval_v_truncated(&ring, &prod.0, &prod.1, 4).unwrap();
                let va = eval_v_truncated(&ring, a, &x, 4).unwrap();
                let vb = eval_v_truncated(&ring, b, &y, 4).unwrap();
                let rhs = ring.bch_truncated(&va, &x.exp(4).unwrap().apply(&vb), 4).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(prod.1, tables().bch.eval(&EndoLie(s.clone()), &x, &y, 4).unwrap());
            }
        }
    }
}

struct EndoLie(Shape);

impl LieOps for EndoLie {
    type Elem = Endo;

    fn zero(&self) -> Endo {
        Endo::zero(&self.0)
    }

    fn add(&self, a: &Endo, b: &Endo) -> Endo {
        a + b
    }

    fn bracket(&self, a: &Endo, b: &Endo) -> Endo {
        a.commutator(b)
    }

    fn scale(&self, s: &PScalar, a: &Endo) -> lazard_core::Result<Endo> {
        a.scale(s)
    }
}

#[test]
fn transfer_examples() {
    let r = transfer_check(&radical(5, 3), 125).unwrap();
    assert_eq!(r.classes.len(), 3);
    assert!(r.classes.iter().all(|(_, t)| *t == IdealType::Ideal));
    assert_eq!(r.right_nilpotent, Some((true, true)));
    let r = transfer_check(&square_to_second(5), 125).unwrap();
    assert!(r.classes.iter().any(|(_, t)| *t != IdealType::Ideal));
    for p in sample_rings().into_iter().filter(|p| p.order() <= 125) {
        let r = transfer_check(&p, 125).unwrap();
        assert_eq!(r.brace, construct_s(&p).unwrap());
        assert_eq!(r.right_nilpotent.map(|(x, _)| x), Some(p.right_nilpotent()));
    }
    assert!(matches!(transfer_check(&radical(5, 4), 25), Err(Error::CapExceeded { order: 125, cap: 25 })));
}

#[test]
fn non_lazard_inputs_are_refused() {
    assert!(matches!(construct_s(&radical(3, 4)), Err(Error::NotLazard(_))));
    assert!(matches!(construct_l(&radical_brace(3, 4)), Err(Error::NotLazard(_))));
    assert!(matches!(root_diff_triangle(&radical_brace(3, 4)), Err(Error::NotLazard(_))));
    assert!(matches!(construct_s_capped(&radical(5, 4), 100), Err(Error::CapExceeded { .. })));
}

#[test]
fn root_diff_examples() {
    let (rows, _) = root_diff_triangle(&SkewBrace::trivial(elementary(5))).unwrap();
    assert!(rows.iter().all(PVec::is_zero));
    let (rows, c) = root_diff_triangle(&radical_brace(5, 3)).unwrap();
    let g = c.index_of.iter().position(|&i| i == 1).unwrap();
    assert_eq!(rows, vec![c.vector(5 * g * g % 25)]);
    let p = square_to_second(5);
    let (rows, c) = root_diff_triangle(&construct_s(&p).unwrap()).unwrap();
    assert_eq!(c.post, p);
    let s = p.shape();
    assert_eq!(rows, vec![gen(s, 1), PVec::zero(s), PVec::zero(s), PVec::zero(s)]);
    for b in lazard_braces(&cyclic(25)).into_iter().chain(lazard_braces(&elementary(3))) {
        let (rows, c) = root_diff_triangle(&b).unwrap();
        assert_eq!(rows, c.post.products());
    }
}

#[test]
fn homogeneous_components() {
    let s = shape(5, &[1, 1]);
    let xi = root_of_unity(5, 1).unwrap();
    let f = Endo::new(&s, vec![vec(&s, &[2, 1]), vec(&s, &[0, 3])]).unwrap();
    let c = vec(&s, &[4, 1]);
    let poly = |m: &PVec| {
        let (x, y) = (m.coords()[0] as i64, m.coords()[1] as i64);
        &(&(&c + &f.apply(m)) + &vec(&s, &[x * y, x * x])) + &vec(&s, &[0, x * x * y])
    };
    for m in elements(&s) {
        let (x, y) = (m.coords()[0] as i64, m.coords()[1] as i64);
        assert_eq!(homogeneous_component(poly, 0, xi, 4)(&m).unwrap(), c);
        assert_eq!(homogeneous_component(poly, 1, xi, 4)(&m).unwrap(), f.apply(&m));
        assert_eq!(homogeneous_component(poly, 2, xi, 4)(&m).unwrap(), vec(&s, &[x * y, x * x]));
        assert_eq!(homogeneous_component(poly, 3, xi, 4)(&m).unwrap(), vec(&s, &[0, x * x * y]));
        assert_eq!(homogeneous_component(|v: &PVec| f.apply(v), 2, xi, 4)(&m).unwrap(), PVec::zero(&s));
    }
    let s = shape(7, &[2]);
    let xi = root_of_unity(7, 2).unwrap();
    let cube = |m: &PVec| m.scale_int(m.coords()[0] as i64 * m.coords()[0] as i64 * 3);
    for m in elements(&s) {
        assert_eq!(homogeneous_component(cube, 3, xi, 6)(&m).unwrap(), cube(&m));
        assert!(homogeneous_component(cube, 1, xi, 6)(&m).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pre_lie_round_trip(seed in any::<u64>(), pick in 0usize..3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = [shape(5, &[1, 1, 1]), shape(3, &[1, 1]), shape(5, &[2, 1])][pick].clone();
        let p = random_pre_lie(&mut rng, &s);
        let b = construct_s(&p).unwrap();
        prop_assert!(b.verify().ok());
        prop_assert!(b.is_brace());
        let c = construct_l(&b).unwrap();
        prop_assert_eq!(&c.post, &p);
        let w = flows_w(&p).unwrap();
        let omega = omega_map(&b).unwrap();
        prop_assert!((0..p.order()).all(|a| omega[w[a]] == a));
        for a in 0..p.order() {
            prop_assert_eq!(eval_u(&b, a, b.lambda(a)).unwrap(), omega[a]);
        }
    }

    #[test]
    fn random_post_lie_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let base = random_nilpotent_lie(&mut rng, &shape(5, &[1, 1, 1]));
        for p in [PostLieRing::trivial(base.clone()), PostLieRing::negative_bracket(base)] {
            let b = construct_s(&p).unwrap();
            prop_assert!(b.verify().ok());
            prop_assert_eq!(construct_l(&b).unwrap().post, p);
        }
    }
}
