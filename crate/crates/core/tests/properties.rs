use gl2modp::arith::{binomial_power, fbar, Elem, Gf, OfRing, PadicExp, PrimePower, TruncLaurent};
use gl2modp::characters::{det_rep, iso_equal, twist, GaloisCharacter, SemisimpleRep};
use gl2modp::lmorphism::{l_map, rho_of};
use gl2modp::satake::{self, twist_action_s};
use gl2modp::types_weights::{digits_to_weight, hw, weight_to_digits, Weight};
use gl2modp::xscheme::{self, act_by_twist, iota_canonical, iota_inverse};
use gl2modp::Ctx;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Gf> {
    prop_oneof![Just((3, 1)), Just((3, 2)), Just((5, 1)), Just((5, 2)), Just((7, 1)), Just((3, 4))]
        .prop_map(|(p, d)| Gf::new(p, d).unwrap())
}

fn elem(k: &Gf, i: u64) -> Elem {
    let order = k.order();
    let i = i % order;
    if i == 0 {
        Elem::ZERO
    } else {
        k.from_log(i as i64)
    }
}

fn series(k: &Gf, val: i64, raw: &[u64], prec: i64) -> TruncLaurent {
    let coeffs = raw.iter().map(|&x| elem(k, x)).collect();
    TruncLaurent::new(k, val, coeffs, val + prec)
}

fn unit_series(k: &Gf, raw: &[u64], prec: i64) -> TruncLaurent {
    let mut c: Vec<Elem> = raw.iter().map(|&x| elem(k, x)).collect();
    c[0] = Elem::ONE;
    TruncLaurent::from_coeffs(k, &c, prec)
}

fn ctx() -> impl Strategy<Value = Ctx> {
    prop_oneof![Just((3, 1)), Just((5, 1)), Just((7, 1))].prop_map(|(p, f)| Ctx::new(p, f, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(k in field(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (elem(&k, a), elem(&k, b), elem(&k, c));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.add(b, c)), k.add(k.add(a, b), c));
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), Elem::ONE);
        }
        prop_assert_eq!(k.frobenius(k.mul(a, b), 1), k.mul(k.frobenius(a, 1), k.frobenius(b, 1)));
    }

    #[test]
    fn psi_inverts_phi(k in field(), val in -6i64..6, raw in prop::collection::vec(any::<u64>(), 1..20), q in prop::sample::select(vec![3u32, 5, 9])) {
        let f = series(&k, val, &raw, 20);
        let back = f.phi(q).psi(q);
        prop_assert!(back.agrees(&f));
        prop_assert_eq!(back.prec(), f.prec());
    }

    #[test]
    fn psi_projection_formula(k in field(), a in prop::collection::vec(any::<u64>(), 1..10), b in prop::collection::vec(any::<u64>(), 1..30)) {
        let q = 3;
        let f = series(&k, 0, &a, 10);
        let g = series(&k, -2, &b, 30);
        let lhs = f.phi(q).mul(&g).psi(q);
        let rhs = f.mul(&g.psi(q));
        prop_assert!(lhs.agrees(&rhs));
    }

    #[test]
    fn inverse_and_associativity(k in field(), a in prop::collection::vec(any::<u64>(), 2..15), b in prop::collection::vec(any::<u64>(), 2..15), c in prop::collection::vec(any::<u64>(), 2..15)) {
        let f = unit_series(&k, &a, 15);
        let g = series(&k, 1, &b, 15);
        let h = series(&k, -1, &c, 15);
        let one = TruncLaurent::one(&k);
        prop_assert!(f.mul(&f.inv().unwrap()).agrees(&one));
        prop_assert!(f.mul(&g).mul(&h).agrees(&f.mul(&g.mul(&h))));
    }

    #[test]
    fn composition_is_associative(k in field(), a in prop::collection::vec(any::<u64>(), 2..12), b in prop::collection::vec(any::<u64>(), 2..12), c in prop::collection::vec(any::<u64>(), 2..12)) {
        let f = series(&k, -1, &a, 13);
        let mut gb = b.clone();
        gb[0] = 1;
        let g = series(&k, 1, &gb, 12);
        let mut hc = c.clone();
        hc[0] = 1;
        let h = series(&k, 1, &hc, 12);
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.agrees(&right));
    }

    #[test]
    fn binomial_powers_add(raw in prop::collection::vec(0u64..3, 1..9), x in 0i128..500, y in 0i128..500) {
        let k = Gf::new(3, 1).unwrap();
        let w = unit_series(&k, &raw, 27);
        let ex = PadicExp::from_int(x, 3, 3).unwrap();
        let ey = PadicExp::from_int(y, 3, 3).unwrap();
        let lhs = binomial_power(&w, &ex).unwrap().mul(&binomial_power(&w, &ey).unwrap());
        let rhs = binomial_power(&w, &ex.add(&ey).unwrap()).unwrap();
        prop_assert!(lhs.eq_mod(&rhs, 27).unwrap());
    }

    #[test]
    fn padic_ratio(num in -1000i128..1000, den in 1i128..200) {
        prop_assume!(den % 5 != 0);
        let e = PadicExp::from_ratio(num, den, 5, 4).unwrap();
        prop_assert_eq!((e.residue() as i128 * den - num).rem_euclid(625), 0);
    }

    #[test]
    fn fbar_cocycle(s1 in any::<u64>(), s2 in any::<u64>()) {
        let k = Gf::new(3, 2).unwrap();
        let ring = OfRing::unramified(&k, 1, 22).unwrap();
        let u = ring.add(&ring.element_from_seed(s1), &ring.one());
        let v = ring.add(&ring.element_from_seed(s2), &ring.one());
        prop_assume!(ring.is_unit(&u) && ring.is_unit(&v));
        let n = 20;
        let fu = fbar(&ring, &u, n).unwrap();
        let fv = fbar(&ring, &v, n).unwrap();
        let fuv = fbar(&ring, &ring.mul(&u, &v), n).unwrap();
        prop_assert!(fu.in_subfield(1).unwrap());
        let lt = fu.inv().unwrap().scale(ring.residue(&u)).shift(1);
        prop_assert!(fuv.agrees(&fu.mul(&fv.compose(&lt).unwrap())));
    }

    #[test]
    fn digits_round_trip(p in prop::sample::select(vec![3u32, 5]), f in 1u32..3, r in 0u32..25, s in 0i64..24) {
        let pp = PrimePower::new(p, f).unwrap();
        prop_assume!(r < pp.q());
        let w = Weight::new(&pp, r as i64, s).unwrap();
        prop_assert_eq!(digits_to_weight(&pp, &weight_to_digits(&pp, &w)).unwrap(), w);
        let (a, b) = hw(&pp, &w);
        prop_assert_eq!(pp.red(a as i64 - b as i64), pp.red(r as i64));
    }

    #[test]
    fn twisting_is_a_group_action(c in ctx(), h in 1i64..7, s in 0i64..6, i in any::<u64>(), a in 0i64..6, j in any::<u64>()) {
        let q = c.q() as i64;
        prop_assume!(h < q);
        let units = c.k_units();
        let l = units[(i % units.len() as u64) as usize];
        let z = units[(j % units.len() as u64) as usize];
        let rho = SemisimpleRep::irred(&c, h, s, l).unwrap();
        let eta = GaloisCharacter::level1(&c, a, z);
        let inv = GaloisCharacter::level1(&c, -a, c.field().inv(z).unwrap());
        let back = twist(&c, &twist(&c, &rho, &eta).unwrap(), &inv).unwrap();
        prop_assert!(iso_equal(&c, &back, &rho));
        let d = det_rep(&c, &twist(&c, &rho, &eta).unwrap());
        let d0 = det_rep(&c, &rho);
        prop_assert_eq!(d.exp, c.red(d0.exp as i64 + 2 * a) as u64);
    }

    #[test]
    fn iota_round_trip(c in ctx(), n in 0u32..6, zi in any::<u64>(), pi in any::<u64>()) {
        prop_assume!(n < c.q() - 1);
        let z2s = c.k_units();
        let z2 = z2s[(zi % z2s.len() as u64) as usize];
        let pts = xscheme::points(&c, n, z2);
        let pt = pts[(pi % pts.len() as u64) as usize];
        let rho = iota_canonical(&c, &pt).unwrap();
        prop_assert_eq!(iota_inverse(&c, &rho, false).unwrap(), pt);
    }

    #[test]
    fn l_is_equivariant(c in ctx(), n in 0u32..6, zi in any::<u64>(), pi in any::<u64>(), a in 0i64..6, gi in any::<u64>()) {
        prop_assume!(n < c.q() - 1);
        let units = c.k_units();
        let z2 = units[(zi % units.len() as u64) as usize];
        let z = units[(gi % units.len() as u64) as usize];
        let pts = satake::points(&c, n, z2);
        let s = pts[(pi % pts.len() as u64) as usize];
        let lhs = l_map(&c, &twist_action_s(&c, a, z, &s).unwrap()).unwrap();
        let rhs = act_by_twist(&c, a, z, &l_map(&c, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let r1 = rho_of(&c, &twist_action_s(&c, a, z, &s).unwrap(), false).unwrap();
        let r0 = twist(&c, &rho_of(&c, &s, false).unwrap(), &GaloisCharacter::level1(&c, a, z)).unwrap();
        prop_assert!(iso_equal(&c, &r1, &r0));
    }
}
