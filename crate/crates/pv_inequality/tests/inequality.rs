use num_bigint::BigUint;
use proptest::prelude::*;
use pv_inequality::{inequality_holds, scan, set_counts, sides, Exact, InequalityError, InequalityInstance};

fn inst(n: &[u32], d: &[u32], r: &[u32]) -> InequalityInstance {
    InequalityInstance::new(n.to_vec(), d.to_vec(), r.to_vec()).unwrap()
}

// plain u64 binomial, independent of the crate's table
fn c(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn naive_holds(n: &[u32], d: &[u32], r: &[u32]) -> bool {
    let prod = |top: &dyn Fn(usize) -> u32| (0..n.len()).map(|i| c((n[i] + top(i)) as u64, n[i] as u64)).product::<u64>();
    prod(&|i| r[i]) + prod(&|i| d[i] - r[i]) < prod(&|i| d[i])
}

#[test]
fn examples() {
    // 3 + 3 = 6 = C(4,2)
    let s = sides(&inst(&[2], &[2], &[1]));
    assert_eq!((s.left_r.clone(), s.left_dr.clone(), s.right.clone()), (Exact::Small(3), Exact::Small(3), Exact::Small(6)));
    assert!(!s.holds());
    // 3 + 6 = 9 < 10
    assert!(inequality_holds(&inst(&[2], &[3], &[1])));
    // 2·1 + 2·3 = 8 < 9
    let s = sides(&inst(&[1, 1], &[2, 2], &[1, 0]));
    assert_eq!((s.left_r.add_check(), s.left_dr.add_check(), s.right.add_check()), (2, 6, 9));
    assert!(s.holds());
    // d = (1,2): r = (1,0) gives 2 + 3 < 6, but r = (0,1) and (1,1) both reach 6
    let e = inst(&[1, 1], &[1, 2], &[1, 0]);
    assert!(!e.hypotheses_hold());
    assert!(inequality_holds(&e));
    assert!(!inequality_holds(&inst(&[1, 1], &[1, 2], &[0, 1])));
    assert!(!inequality_holds(&inst(&[1, 1], &[1, 2], &[1, 1])));
}

trait AddCheck {
    fn add_check(&self) -> u128;
}
impl AddCheck for Exact {
    fn add_check(&self) -> u128 {
        match self {
            Exact::Small(x) => *x,
            Exact::Big(_) => panic!("unexpected big value"),
        }
    }
}

#[test]
fn invalid_instances() {
    let bad = |n: &[u32], d: &[u32], r: &[u32]| InequalityInstance::new(n.to_vec(), d.to_vec(), r.to_vec());
    assert!(matches!(bad(&[], &[], &[]), Err(InequalityError::InvalidInstance(_))));
    assert!(matches!(bad(&[2], &[2], &[0]), Err(InequalityError::InvalidInstance(_))));
    assert!(matches!(bad(&[2], &[2], &[2]), Err(InequalityError::InvalidInstance(_))));
    assert!(matches!(bad(&[2], &[2], &[3]), Err(InequalityError::InvalidInstance(_))));
    assert!(matches!(bad(&[0], &[2], &[1]), Err(InequalityError::InvalidInstance(_))));
    assert!(matches!(bad(&[1, 2], &[2], &[1]), Err(InequalityError::InvalidInstance(_))));
    // r_i = 0 is allowed as long as the sum is interior
    assert!(bad(&[1, 1], &[2, 2], &[0, 2]).is_ok());
    assert_eq!(scan(0, 1, 1).unwrap_err(), InequalityError::BadBounds);
}

#[test]
fn big_values_are_exact() {
    // C(400,200)^3 is far beyond u128
    let i = inst(&[200, 200, 200], &[200, 200, 200], &[100, 100, 100]);
    let s = sides(&i);
    assert!(matches!(s.right, Exact::Big(_)));
    let c = |n: u64, k: u64| -> BigUint { (0..k).fold(BigUint::from(1u32), |a, j| a * (n - j) / (j + 1)) };
    assert_eq!(s.right.to_biguint(), c(400, 200).pow(3));
    assert_eq!(s.left_r.to_biguint(), c(300, 200).pow(3));
    assert!(s.holds());
}

#[test]
fn scan_default_bounds() {
    let t = std::time::Instant::now();
    let rep = scan(3, 6, 6).unwrap();
    assert!(rep.violations.is_empty(), "{:?}", &rep.violations[..rep.violations.len().min(5)]);
    assert!(rep.excluded_failures.iter().any(|i| i.k() == 1 && i.n() == [2] && i.d() == [2]));
    assert!(rep.excluded_failures.contains(&inst(&[1, 1], &[1, 2], &[0, 1])));
    assert!(!rep.excluded_failures.contains(&inst(&[1, 1], &[1, 2], &[1, 0])));
    assert!(rep.excluded_failures.iter().all(|i| !i.hypotheses_hold()));
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn scan_matches_naive_on_small_grid() {
    let rep = scan(2, 3, 3).unwrap();
    let mut fails = 0;
    let mut total = 0;
    for k in 1..=2usize {
        let range: Vec<Vec<u32>> = if k == 1 {
            (1..=3).map(|a| vec![a]).collect()
        } else {
            (1..=3).flat_map(|a| (1..=3).map(move |b| vec![a, b])).collect()
        };
        for n in &range {
            for d in &range {
                let rs: Vec<Vec<u32>> = if k == 1 {
                    (0..=d[0]).map(|a| vec![a]).collect()
                } else {
                    (0..=d[0]).flat_map(|a| (0..=d[1]).map(move |b| vec![a, b])).collect()
                };
                for r in rs {
                    let sr: u32 = r.iter().sum();
                    if sr == 0 || sr >= d.iter().sum() {
                        continue;
                    }
                    total += 1;
                    if !naive_holds(n, d, &r) {
                        fails += 1;
                    }
                }
            }
        }
    }
    assert_eq!(rep.checked, total);
    assert_eq!((rep.violations.len() + rep.excluded_failures.len()) as u64, fails);
}

// enumerate tuples of subsets directly and count S, S1, S2
fn brute_sets(n: &[u32], d: &[u32], r: &[u32]) -> (u64, u64, u64, u64) {
    let mut per: Vec<Vec<(bool, bool)>> = vec![];
    for i in 0..n.len() {
        let m = n[i] + d[i];
        let mut v = vec![];
        for mask in 0u32..(1 << m) {
            if mask.count_ones() != n[i] {
                continue;
            }
            let low = (1u32 << r[i]) - 1;
            let mid = ((1u32 << d[i]) - 1) & !low;
            v.push((mask & low == 0, mask & mid == 0));
        }
        per.push(v);
    }
    let mut acc = vec![(true, true)];
    for v in &per {
        acc = acc.iter().flat_map(|&(a, b)| v.iter().map(move |&(x, y)| (a && x, b && y))).collect();
    }
    let s = acc.len() as u64;
    let s1 = acc.iter().filter(|t| t.0).count() as u64;
    let s2 = acc.iter().filter(|t| t.1).count() as u64;
    let s12 = acc.iter().filter(|t| t.0 && t.1).count() as u64;
    (s, s1, s2, s12)
}

#[test]
fn set_counts_match_enumeration() {
    for (n, d, r) in [
        (vec![2], vec![3], vec![1]),
        (vec![3], vec![4], vec![2]),
        (vec![1, 2], vec![2, 2], vec![1, 0]),
        (vec![2, 1, 1], vec![1, 2, 2], vec![1, 0, 1]),
    ] {
        let i = inst(&n, &d, &r);
        let sc = set_counts(&i);
        let (s, s1, s2, s12) = brute_sets(&n, &d, &r);
        assert_eq!(sc.s, BigUint::from(s));
        assert_eq!(sc.s1, BigUint::from(s1));
        assert_eq!(sc.s2, BigUint::from(s2));
        assert_eq!(sc.s12, BigUint::from(s12));
        assert!(sc.consistent());
    }
}

fn arb_instance() -> impl Strategy<Value = InequalityInstance> {
    (1usize..=4)
        .prop_flat_map(|k| (prop::collection::vec(1u32..=7, k), prop::collection::vec(1u32..=7, k)))
        .prop_flat_map(|(n, d)| {
            let rs: Vec<_> = d.iter().map(|&di| 0..=di).collect();
            (Just(n), Just(d), rs)
        })
        .prop_filter_map("interior r", |(n, d, r)| InequalityInstance::new(n, d, r).ok())
}

proptest! {
    #[test]
    fn agrees_with_naive(i in arb_instance()) {
        prop_assert_eq!(inequality_holds(&i), naive_holds(i.n(), i.d(), i.r()));
    }

    #[test]
    fn complement_symmetry(i in arb_instance()) {
        prop_assert_eq!(inequality_holds(&i), inequality_holds(&i.complement()));
        let (a, b) = (sides(&i), sides(&i.complement()));
        prop_assert_eq!(a.left_r, b.left_dr);
    }

    #[test]
    fn permutation_symmetry(i in arb_instance(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..i.k()).collect();
        let mut s = seed;
        for j in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(j, (s >> 33) as usize % (j + 1));
        }
        let q = i.permuted(&perm);
        prop_assert_eq!(inequality_holds(&i), inequality_holds(&q));
        prop_assert_eq!(i.hypotheses_hold(), q.hypotheses_hold());
    }

    #[test]
    fn counting_bound(i in arb_instance()) {
        let sc = set_counts(&i);
        prop_assert!(sc.consistent());
        prop_assert!(sc.outside() >= sc.outside_lower);
        if i.hypotheses_hold() {
            prop_assert!(sc.outside_lower >= BigUint::from(2u32));
        }
    }
}
