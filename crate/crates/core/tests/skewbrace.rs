mod common;

use common::*;
use lazard_core::liering::{Filtration, FinGroup};
use lazard_core::postlie::IdealType;
use lazard_core::skewbrace::*;
use lazard_core::subset::Subset;
use lazard_core::Error;
use proptest::prelude::*;

fn cyclic(n: usize) -> FinGroup {
    FinGroup::from_fn(n, 0, |a, b| (a + b) % n).unwrap()
}

fn elementary(p: usize) -> FinGroup {
    FinGroup::from_fn(p * p, 0, |a, b| ((a / p + b / p) % p) * p + (a % p + b % p) % p).unwrap()
}

fn unitriangular(p: usize) -> FinGroup {
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    FinGroup::from_fn(p * p * p, 0, |x, y| {
        let ((a, b, c), (d, e, f)) = (split(x), split(y));
        ((a + d) % p) * p * p + ((b + e) % p) * p + (c + f + a * e) % p
    })
    .unwrap()
}

/// `(a1, a2) ∘ (b1, b2) = (a1 + b1, a2 + b2 + a1 b1)` over Z/p × Z/p, element `x1·p + x2`.
fn shear(p: usize) -> SkewBrace {
    let circ = FinGroup::from_fn(p * p, 0, |a, b| {
        let (a1, a2, b1, b2) = (a / p, a % p, b / p, b % p);
        ((a1 + b1) % p) * p + (a2 + b2 + a1 * b1) % p
    })
    .unwrap();
    SkewBrace::new(elementary(p), circ).unwrap()
}

fn compatible_everywhere(b: &SkewBrace) -> bool {
    let (d, c) = (b.dot(), b.circ());
    let n = b.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| c.mul(x, d.mul(y, z)) == d.mul(d.mul(c.mul(x, y), d.inv(x)), c.mul(x, z))))
    })
}

fn classify_by_elements(b: &SkewBrace, s: &Subset) -> IdealType {
    let (d, c) = (b.dot(), b.circ());
    let n = b.order();
    let mem: Vec<usize> = s.members().collect();
    let closed = |g: &FinGroup| mem.iter().all(|&x| mem.iter().all(|&y| s.contains(g.mul(x, g.inv(y)))));
    if mem.is_empty() || !closed(d) || !closed(c) {
        return IdealType::NotClosed;
    }
    let all = |f: &dyn Fn(usize, usize) -> usize| (0..n).all(|a| mem.iter().all(|&x| s.contains(f(a, x))));
    if !all(&|a, x| b.lambda(a)[x] as usize) {
        IdealType::Substructure
    } else if !all(&|a, x| d.mul(d.mul(a, x), d.inv(a))) {
        IdealType::LeftIdeal
    } else if !all(&|a, x| c.mul(c.mul(a, x), c.inv(a))) {
        IdealType::StrongLeftIdeal
    } else {
        IdealType::Ideal
    }
}

fn elem_set(n: usize, f: impl Fn(usize) -> bool) -> Subset {
    Subset::from_members(n, (0..n).filter(|&x| f(x)))
}

#[test]
fn trivial_braces_verify() {
    let t = SkewBrace::trivial(cyclic(25));
    assert!(t.verify().ok());
    assert!(t.is_brace());
    for a in 0..25 {
        assert!(t.lambda(a).iter().enumerate().all(|(i, &x)| i == x as usize));
        assert!((0..25).all(|b| t.star(a, b) == 0));
    }
    let u = unitriangular(3);
    let nonabelian = SkewBrace::trivial(u.clone());
    assert!(nonabelian.verify().ok());
    assert!(!nonabelian.is_brace());
    let op = FinGroup::from_fn(27, 0, |a, b| u.mul(b, a)).unwrap();
    let almost = SkewBrace::new(u, op).unwrap();
    assert!(almost.verify().ok());
    almost.check_lambda().unwrap();
}

#[test]
fn radical_brace_operations() {
    let b = radical_brace(5, 3);
    assert_eq!(b.order(), 25);
    assert!(b.verify().ok());
    assert!(compatible_everywhere(&b));
    b.check_lambda().unwrap();
    for a in 0..25 {
        for c in 0..25 {
            assert_eq!(5 * b.star(a, c), (5 * a * 5 * c) % 125);
        }
    }
}

#[test]
fn broken_compatibility_is_reported() {
    let sigma = [0usize, 2, 1, 3, 4, 5, 7, 6, 8];
    let circ = FinGroup::from_fn(9, 0, |a, b| sigma[(sigma[a] + sigma[b]) % 9]).unwrap();
    let b = SkewBrace::new(elementary(3), circ).unwrap();
    assert!(!compatible_everywhere(&b));
    assert!(b.verify().failures[0].contains("compatibility"));
    assert!(SkewBrace::new(cyclic(9), cyclic(27)).is_err());
}

#[test]
fn l_series_examples() {
    assert_eq!(SkewBrace::trivial(cyclic(25)).l_class(), Some(1));
    let b = radical_brace(5, 3);
    let l = b.l_series();
    assert_eq!(l.class, Some(2));
    assert_eq!(l.terms[1], elem_set(25, |x| x % 5 == 0));
    assert_eq!(shear(5).l_class(), Some(2));
}

#[test]
fn nilpotency_decompositions() {
    for b in [SkewBrace::trivial(cyclic(25)), radical_brace(5, 3), shear(3), SkewBrace::trivial(unitriangular(3))] {
        let d = b.nilpotency_decomposition().unwrap();
        assert!(d.left_nilpotent && d.base_nilpotent && d.l_nilpotent);
    }
}

#[test]
fn circ_class_bounds() {
    let (k, c) = SkewBrace::trivial(cyclic(25)).circ_nilpotency_bound().unwrap();
    assert_eq!((k, c), (1, 1));
    let (k, c) = radical_brace(5, 3).circ_nilpotency_bound().unwrap();
    assert_eq!(k, 2);
    assert!(c <= 2);
}

#[test]
fn substructures_of_radical_brace() {
    let b = radical_brace(5, 3);
    let ring_ann = elem_set(25, |a| (0..25).all(|x| (5 * a * 5 * x) % 125 == 0));
    let s = b.substructures().unwrap();
    assert_eq!(s.soc, ring_ann);
    assert_eq!(s.ann, ring_ann);
    assert_eq!(s.fix, ring_ann);
    let t = SkewBrace::trivial(cyclic(25)).substructures().unwrap();
    assert!(t.fix.is_full() && t.soc.is_full() && t.ann.is_full());
}

#[test]
fn ideal_type_examples() {
    let b = radical_brace(5, 3);
    assert_eq!(b.ideal_type(&Subset::full(25)), IdealType::Ideal);
    assert_eq!(b.ideal_type(&b.substructures().unwrap().soc), IdealType::Ideal);
    let s = shear(3);
    let first = Subset::from_members(9, [0, 3, 6]);
    let second = Subset::from_members(9, [0, 1, 2]);
    let diagonal = Subset::from_members(9, [0, 4, 8]);
    assert_eq!(s.ideal_type(&first), classify_by_elements(&s, &first));
    assert_eq!(s.ideal_type(&second), IdealType::Ideal);
    assert_eq!(s.ideal_type(&diagonal), classify_by_elements(&s, &diagonal));
    assert!(s.ideal_type(&diagonal) < IdealType::LeftIdeal);
    assert_eq!(s.ideal_type(&Subset::from_members(9, [0, 1])), IdealType::NotClosed);
}

#[test]
fn ideal_types_match_element_oracle() {
    let braces = [radical_brace(3, 3), shear(3), SkewBrace::trivial(unitriangular(3)), radical_brace(5, 3)];
    for b in &braces {
        for h in b.dot().all_subgroups() {
            assert_eq!(b.ideal_type(&h), classify_by_elements(b, &h));
        }
        let s = b.substructures().unwrap();
        assert!(s.soc.is_subset(&s.fix) || !b.is_brace());
    }
}

#[test]
fn power_sets() {
    let b = radical_brace(5, 3);
    let five = b.power_set_ideals(5).unwrap();
    let circ_fifth: Vec<usize> = (0..25)
        .map(|a| {
            let x = 5 * a as u64;
            let v = ((1 + x).pow(5) - 1) % 125;
            (v / 5) as usize
        })
        .collect();
    assert_eq!(five.circ_powers, Subset::from_members(25, circ_fifth));
    assert_eq!(five.powers, elem_set(25, |x| x % 5 == 0));
    let unit = b.power_set_ideals(7).unwrap();
    assert!(unit.powers.is_full());
    assert_eq!(unit.torsion.len(), 1);
    let all = b.power_set_ideals(25).unwrap();
    assert_eq!(all.powers.len(), 1);
    assert!(all.torsion.is_full());
}

#[test]
fn holomorph_plus_examples() {
    let z5 = cyclic(5);
    let h = Holomorph::plus(&z5, &z5.canonical_filtration().unwrap()).unwrap();
    assert_eq!(h.auts.len(), 1);
    assert_eq!(h.order(), 5);
    let z25 = cyclic(25);
    let f = Filtration::new(0, vec![Subset::full(25), elem_set(25, |x| x % 5 == 0)]).unwrap();
    let h = Holomorph::plus(&z25, &f).unwrap();
    assert_eq!(h.order(), 125);
    let mut mults: Vec<usize> = h.auts.iter().map(|a| a[1] as usize).collect();
    mults.sort();
    assert_eq!(mults, vec![1, 6, 11, 16, 21]);
    for al in &h.auts {
        assert!((0..25).all(|x| al[x] as usize == x * al[1] as usize % 25));
    }
    let deep = Filtration::new(
        0,
        (0..5).map(|i| if i == 0 { Subset::full(25) } else { elem_set(25, |x| x % 5 == 0) }).collect(),
    );
    assert!(deep.is_err() || Holomorph::plus(&z25, &deep.unwrap()).is_err());
}

#[test]
fn automorphism_counts() {
    assert_eq!(automorphisms(&cyclic(9)).len(), 6);
    assert_eq!(automorphisms(&elementary(3)).len(), 48);
    assert_eq!(p_automorphisms(&elementary(3)).len(), 9);
    assert_eq!(p_automorphisms(&cyclic(9)).len(), 3);
    assert_eq!(automorphisms(&unitriangular(3)).len(), 432);
}

#[test]
fn regular_subgroup_enumeration() {
    let z5 = cyclic(5);
    let plus = Holomorph::plus(&z5, &z5.canonical_filtration().unwrap()).unwrap();
    let found = regular_subgroups(&z5, &plus.auts, 125).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0], SkewBrace::trivial(z5));
    for g in [cyclic(9), elementary(3)] {
        let auts = p_automorphisms(&g);
        let by_subgroups = regular_subgroups(&g, &auts, 125).unwrap();
        let by_lambda = lambda_search(&g, &auts).unwrap();
        assert_eq!(by_subgroups, by_lambda);
        for b in &by_subgroups {
            assert!(compatible_everywhere(b));
            b.check_lambda().unwrap();
            assert!((b.dot().lower_central_series().class.unwrap() as u64) < 3);
        }
    }
    assert!(matches!(regular_subgroups(&cyclic(9), &[], 5), Err(Error::CapExceeded { .. })));
}

#[test]
fn isomorphism_search() {
    let b = shear(3);
    let perm = [0usize, 2, 1, 6, 8, 7, 3, 5, 4];
    let r = b.relabel(&perm).unwrap();
    assert!(r.verify().ok());
    assert!(isomorphic(&b, &r));
    assert!(!isomorphic(&b, &SkewBrace::trivial(elementary(3))));
    let mut inv = [0usize; 9];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    assert_eq!(r.relabel(&inv).unwrap(), b);
}

#[test]
fn series_invariants() {
    for b in [radical_brace(5, 3), radical_brace(3, 3), shear(5), SkewBrace::trivial(unitriangular(3))] {
        let l = b.l_series();
        if b.is_brace() {
            assert_eq!(l, b.left_series());
        }
        let n = l.terms.len();
        let term = |i: usize| if i <= n { l.terms[i - 1].clone() } else { Subset::from_members(b.order(), [0]) };
        let d = b.dot();
        for i in 1..=n {
            for j in 1..=n {
                for x in term(i).members() {
                    for y in term(j).members() {
                        assert!(term(i + j).contains(d.mul(d.mul(x, y), d.mul(d.inv(x), d.inv(y)))));
                    }
                }
            }
        }
        let f = b.canonical_filtration().unwrap();
        let adj = b.adjoint_filtration(&f).unwrap();
        assert!(adj.length() <= f.length());
        let strong = b.strong_series(b.prime().unwrap() as usize + 1);
        assert!(strong.last().unwrap().len() == 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generator_check_matches_full_check(s in proptest::sample::subsequence((1usize..9).collect::<Vec<_>>(), 8)) {
        let mut sigma = vec![0usize];
        sigma.extend(s.iter().cloned());
        sigma.extend((1..9).filter(|x| !s.contains(x)));
        let inv: Vec<usize> = (0..9).map(|x| sigma.iter().position(|&y| y == x).unwrap()).collect();
        let circ = FinGroup::from_fn(9, 0, |a, b| inv[(sigma[a] + sigma[b]) % 9]).unwrap();
        let b = SkewBrace::new(elementary(3), circ).unwrap();
        prop_assert_eq!(b.verify().ok(), compatible_everywhere(&b));
    }

    #[test]
    fn relabelling_preserves_everything(seed in 0usize..200) {
        let b = shear(3);
        let mut rest: Vec<usize> = (1..9).collect();
        let mut perm = vec![0usize];
        let mut s = seed;
        while !rest.is_empty() {
            perm.push(rest.remove(s % rest.len()));
            s /= 3;
        }
        let r = b.relabel(&perm).unwrap();
        prop_assert!(r.verify().ok());
        prop_assert_eq!(r.l_class(), b.l_class());
        prop_assert!(isomorphic(&b, &r));
    }
}
