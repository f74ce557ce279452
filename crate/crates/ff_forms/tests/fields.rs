use ff_forms::{with_field, FieldDesc, FieldError, FiniteField, Gf, Gf2, SUPPORTED_Q};
use num_traits::{One, Zero};

fn check_axioms<F: FiniteField>() {
    let all: Vec<F> = F::elements().collect();
    assert_eq!(all.len(), F::ORDER);
    for (i, &a) in all.iter().enumerate() {
        assert_eq!(a.index(), i);
        assert_eq!(a + F::zero(), a);
        assert_eq!(a * F::one(), a);
        assert_eq!(a + (-a), F::zero());
        match a.inv() {
            Some(b) => assert_eq!(a * b, F::one()),
            None => assert!(a.is_zero()),
        }
        for &b in &all {
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            assert_eq!(a - b, a + (-b));
            for &c in &all {
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
            }
        }
    }
    // characteristic
    let mut s = F::zero();
    for _ in 0..F::CHAR {
        s = s + F::one();
    }
    assert!(s.is_zero());
    // cyclic unit group
    let q1 = F::ORDER - 1;
    let has_generator = all.iter().filter(|x| !x.is_zero()).any(|&g| {
        let mut x = g;
        let mut ord = 1;
        while x != F::one() {
            x = x * g;
            ord += 1;
        }
        ord == q1
    });
    assert!(has_generator);
}

#[test]
fn axioms_hold_for_every_supported_field() {
    for q in SUPPORTED_Q {
        with_field!(q, Q, { check_axioms::<Gf<Q>>() }).unwrap();
        assert!(FieldDesc::new(q as u32).is_ok());
    }
}

#[test]
fn prime_fields_are_integers_mod_p() {
    fn check<const Q: u8>() {
        for a in 0..Q as usize {
            for b in 0..Q as usize {
                let (x, y) = (Gf::<Q>::from_index(a), Gf::<Q>::from_index(b));
                assert_eq!((x + y).index(), (a + b) % Q as usize);
                assert_eq!((x * y).index(), (a * b) % Q as usize);
            }
        }
    }
    check::<2>();
    check::<3>();
    check::<5>();
    check::<7>();
}

#[test]
fn frobenius_fixes_everything() {
    fn check<const Q: u8>() {
        for x in Gf::<Q>::elements() {
            let mut y = Gf::<Q>::one();
            for _ in 0..Q {
                y = y * x;
            }
            assert_eq!(y, x);
        }
    }
    check::<4>();
    check::<8>();
    check::<9>();
}

#[test]
fn quadratic_extensions() {
    fn check<const Q: u8>() {
        let q = Q as usize;
        let all: Vec<Gf2<Q>> = Gf::<Q>::elements()
            .flat_map(|a| Gf::<Q>::elements().map(move |b| Gf2 { a, b }))
            .collect();
        assert_eq!(all.len(), q * q);
        let mut base = 0;
        for &x in &all {
            assert_eq!(x.conj().conj(), x);
            let n = x * x.conj();
            assert!(n.is_base());
            assert!((x + x.conj()).is_base());
            if x.is_base() {
                base += 1;
                assert_eq!(x.conj(), x);
            }
            if !x.is_zero() {
                // x^(q^2-1) = 1
                let mut y = Gf2::<Q>::one();
                for _ in 0..q * q - 1 {
                    y = y * x;
                }
                assert_eq!(y, Gf2::one());
            }
        }
        assert_eq!(base, q);
        // no zero divisors
        for &x in &all {
            for &y in &all {
                if !x.is_zero() && !y.is_zero() {
                    assert!(!(x * y).is_zero());
                }
            }
        }
    }
    check::<2>();
    check::<3>();
    check::<4>();
    check::<5>();
}

#[test]
fn unsupported_sizes() {
    for q in [0u32, 1, 6, 10, 11, 16, 300] {
        assert_eq!(FieldDesc::new(q), Err(FieldError::Unsupported(q)));
    }
    assert!(with_field!(6u8, Q, { Q }).is_none());
}
