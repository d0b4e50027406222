use pericat::formal_char::theta_char;
use pericat::pe3_tables::{decompose, Pe3Tables};
use pericat::root_data::q;
use pericat::{Basis, Error, FormalChar, Parabolic, Weight};

fn w(xs: &[i64]) -> Weight {
    Weight::from_ints(xs)
}

fn nablas(p: &Parabolic, ws: &[&[i64]]) -> FormalChar {
    let ws: Vec<Weight> = ws.iter().map(|v| w(v)).collect();
    FormalChar::nabla_sum(p, &ws)
}

#[test]
fn stated_rows() {
    let t = Pe3Tables::builtin();
    let b = Parabolic::borel(3);
    assert_eq!(
        t.lookup(&w(&[0, 1, 0]), &b).unwrap(),
        nablas(&b, &[&[0, 1, 0], &[0, 0, 1], &[-1, 0, 0]])
    );
    assert_eq!(
        t.lookup(&w(&[0, 1, 4]), &b).unwrap(),
        nablas(&b, &[&[0, 1, 4], &[-1, 0, 4]])
    );
    // shifted by ω_3
    assert_eq!(
        t.lookup(&w(&[2, 3, 2]), &b).unwrap(),
        nablas(&b, &[&[2, 3, 2], &[2, 2, 3], &[1, 2, 2]])
    );
    let p = Parabolic::new(vec![2, 1]).unwrap();
    let t58 = t.lookup(&w(&[1, 0, 4]), &p).unwrap();
    assert_eq!(t58.coeff(&Basis::Nabla(p.clone()), &w(&[1, 0, 4])), 1);
    assert!(t58
        .weights()
        .all(|mu| pericat::root_data::is_p_dominant(mu, &p)));
}

#[test]
fn theta_images_split_into_rows() {
    let t = Pe3Tables::builtin();
    let b = Parabolic::borel(3);
    let lookup = |l: &Weight| t.lookup(l, &b);
    // θ_{-1} T_{0,-1,1} is twice a three-term character
    let start = lookup(&w(&[0, -1, 1])).unwrap();
    let image = theta_char(q(-1), &start).unwrap();
    let parts = decompose(&image, lookup).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].1, 2);
}

#[test]
fn delta_multiplicity_two_occurs() {
    // (5.4): ∇_{0,1,-1} and ∇_{0,-1,1} both contain Δ_{0,-1,-1}
    let t = Pe3Tables::builtin();
    let chi = t.lookup(&w(&[0, 1, -1]), &Parabolic::borel(3)).unwrap();
    let mut count = 0;
    for (_, mu, c) in chi.iter() {
        for mask in 0..8u32 {
            let mut x = mu.clone();
            for i in 0..3 {
                if mask & (1 << i) != 0 {
                    x = x.shift_coord(i, -2);
                }
            }
            if x == w(&[0, -1, -1]) {
                count += c;
            }
        }
    }
    assert_eq!(count, 2);
}

#[test]
fn outside_the_tables() {
    let t = Pe3Tables::builtin();
    let err = t
        .lookup(&"-1/2,0,1/2".parse().unwrap(), &Parabolic::borel(3))
        .unwrap_err();
    assert!(matches!(err, Error::NoTableEntry { .. }));
    let err = t
        .lookup(&w(&[0, 1, 2, 3]), &Parabolic::borel(4))
        .unwrap_err();
    assert!(
        matches!(
            err,
            Error::UnsupportedRank {
                expected: 3,
                got: 4
            }
        ),
        "{err}"
    );
}
