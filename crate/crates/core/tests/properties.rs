use num::{BigInt, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use ultrahom::angles::{ratio, simplest_rational_between, Class, GenAngle, Model, Rational};
use ultrahom::circular::{density_witness, order};
use ultrahom::formula::Formula;
use ultrahom::fraisse::{are_isomorphic, canonical_form, ef_game, Winner};
use ultrahom::structure::{FinStructure, StructureJson};

fn structure(max_n: usize, labels: usize) -> impl Strategy<Value = FinStructure> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec(any::<bool>(), n * n),
            proptest::collection::vec(0..labels.max(1), n),
        )
            .prop_map(move |(bits, lab)| {
                let x = FinStructure::from_fn(n, |u, v| u != v && bits[u * n + v]);
                if labels > 0 {
                    x.with_labels(lab).unwrap()
                } else {
                    x
                }
            })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn with_perm(max_n: usize, labels: usize) -> impl Strategy<Value = (FinStructure, Vec<usize>)> {
    structure(max_n, labels).prop_flat_map(|x| {
        let n = x.size();
        (Just(x), permutation(n))
    })
}

fn is_iso(x: &FinStructure, y: &FinStructure, map: &[usize]) -> bool {
    let n = x.size();
    let mut hit = vec![false; n];
    for &w in map {
        hit[w] = true;
    }
    hit.iter().all(|&h| h)
        && (0..n).all(|u| x.label(u) == y.label(map[u]) && (0..n).all(|v| x.has(u, v) == y.has(map[u], map[v])))
}

fn naive_iso(x: &FinStructure, y: &FinStructure) -> bool {
    fn go(x: &FinStructure, y: &FinStructure, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if map.len() == x.size() {
            return is_iso(x, y, map);
        }
        for w in 0..y.size() {
            if !used[w] {
                used[w] = true;
                map.push(w);
                if go(x, y, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    x.size() == y.size() && go(x, y, &mut Vec::new(), &mut vec![false; y.size()])
}

/// Plain minimax over all pebble positions.
fn naive_duplicator(x: &FinStructure, y: &FinStructure, pebbles: &mut Vec<(usize, usize)>, rounds: usize) -> bool {
    let ok = pebbles.iter().all(|&(a, b)| {
        x.label(a) == y.label(b)
            && pebbles
                .iter()
                .all(|&(c, d)| (a == c) == (b == d) && x.has(a, c) == y.has(b, d))
    });
    if !ok {
        return false;
    }
    if rounds == 0 {
        return true;
    }
    let reply = |pebbles: &mut Vec<(usize, usize)>, pair: (usize, usize)| {
        pebbles.push(pair);
        let r = naive_duplicator(x, y, pebbles, rounds - 1);
        pebbles.pop();
        r
    };
    (0..x.size()).all(|a| (0..y.size()).any(|b| reply(pebbles, (a, b))))
        && (0..y.size()).all(|b| (0..x.size()).any(|a| reply(pebbles, (a, b))))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..25).prop_map(|(n, d)| ratio(n, d))
}

fn brute_simplest(lo: &Rational, hi: &Rational) -> Rational {
    for d in 1i64.. {
        let d_big = BigInt::from(d);
        let from = (lo * Rational::from(d_big.clone())).floor().to_integer();
        let to = (hi * Rational::from(d_big.clone())).ceil().to_integer();
        let mut best: Option<Rational> = None;
        let mut n = from;
        while n <= to {
            let q = Rational::new(n.clone(), d_big.clone());
            if *lo < q && q < *hi && best.as_ref().map_or(true, |b| q.numer().abs() < b.numer().abs()) {
                best = Some(q);
            }
            n += 1;
        }
        if let Some(b) = best {
            return b;
        }
    }
    unreachable!()
}

#[derive(Clone, Debug)]
enum Ast {
    Rel(usize, usize),
    Eq(usize, usize),
    Label(usize, usize),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
    Exists(usize, Box<Ast>),
    Forall(usize, Box<Ast>),
}

const VARS: [&str; 3] = ["u", "v", "w"];
const LABELS: [&str; 2] = ["a", "b"];

fn ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0..3usize, 0..3usize).prop_map(|(a, b)| Ast::Rel(a, b)),
        (0..3usize, 0..3usize).prop_map(|(a, b)| Ast::Eq(a, b)),
        (0..2usize, 0..3usize).prop_map(|(l, a)| Ast::Label(l, a)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Ast::Not(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Or(Box::new(a), Box::new(b))),
            (0..3usize, inner.clone()).prop_map(|(v, a)| Ast::Exists(v, Box::new(a))),
            (0..3usize, inner).prop_map(|(v, a)| Ast::Forall(v, Box::new(a))),
        ]
    })
}

fn render(a: &Ast) -> String {
    match a {
        Ast::Rel(x, y) => format!("R({},{})", VARS[*x], VARS[*y]),
        Ast::Eq(x, y) => format!("{}={}", VARS[*x], VARS[*y]),
        Ast::Label(l, x) => format!("{}({})", LABELS[*l], VARS[*x]),
        Ast::Not(b) => format!("!({})", render(b)),
        Ast::And(b, c) => format!("({}) & ({})", render(b), render(c)),
        Ast::Or(b, c) => format!("({}) | ({})", render(b), render(c)),
        Ast::Exists(v, b) => format!("E {}.({})", VARS[*v], render(b)),
        Ast::Forall(v, b) => format!("A {}.({})", VARS[*v], render(b)),
    }
}

fn truth(a: &Ast, x: &FinStructure, env: &mut [usize; 3]) -> bool {
    match a {
        Ast::Rel(p, q) => x.has(env[*p], env[*q]),
        Ast::Eq(p, q) => env[*p] == env[*q],
        Ast::Label(l, p) => x.label(env[*p]) == Some(*l),
        Ast::Not(b) => !truth(b, x, env),
        Ast::And(b, c) => truth(b, x, env) && truth(c, x, env),
        Ast::Or(b, c) => truth(b, x, env) || truth(c, x, env),
        Ast::Exists(v, b) | Ast::Forall(v, b) => {
            let saved = env[*v];
            let mut values = (0..x.size()).map(|w| {
                env[*v] = w;
                truth(b, x, env)
            });
            let r = if matches!(a, Ast::Exists(..)) {
                values.any(|t| t)
            } else {
                values.all(|t| t)
            };
            env[*v] = saved;
            r
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_a_complete_invariant(x in structure(5, 2), y in structure(5, 2)) {
        let same = canonical_form(&x).0 == canonical_form(&y).0;
        prop_assert_eq!(same, naive_iso(&x, &y));
    }

    #[test]
    fn canonical_form_ignores_relabeling((x, p) in with_perm(6, 3)) {
        let (form, rep) = canonical_form(&x);
        prop_assert_eq!(&form, &canonical_form(&x.permuted(&p)).0);
        prop_assert!(naive_iso(&x, &rep));
    }

    #[test]
    fn isomorphism_survives_permutation((x, p) in with_perm(7, 2)) {
        let y = x.permuted(&p);
        let map = are_isomorphic(&x, &y);
        prop_assert!(map.as_ref().is_some_and(|m| is_iso(&x, &y, m)));
    }

    #[test]
    fn json_round_trip(x in structure(8, 3)) {
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let back: StructureJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(FinStructure::try_from(back).unwrap(), x);
    }

    #[test]
    fn simplest_rational_matches_brute_force(a in small_rational(), b in small_rational()) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let got = simplest_rational_between(&GenAngle::from_rational(lo.clone()), &GenAngle::from_rational(hi.clone()));
        prop_assert_eq!(got, brute_simplest(&lo, &hi));
    }

    #[test]
    fn simplest_rational_near_pi_multiples(a in small_rational(), b in -4i64..4, w in 1i64..1000) {
        // The open interval (a + bπ, a + 1/w + bπ) in floating point.
        let lo = GenAngle::new(a.clone(), Rational::from(BigInt::from(b)));
        let hi = GenAngle::new(a.clone() + ratio(1, w), Rational::from(BigInt::from(b)));
        let q = simplest_rational_between(&lo, &hi);
        let base = a.to_f64().unwrap() + b as f64 * std::f64::consts::PI;
        let qf = q.to_f64().unwrap();
        prop_assert!(qf > base - 1e-12 && qf < base + 1.0 / w as f64 + 1e-12);
        // Nothing with a smaller denominator fits.
        for d in 1..q.denom().to_i64().unwrap() {
            let n = (base * d as f64 + 1e-9).floor() + 1.0;
            prop_assert!(n / d as f64 >= base + 1.0 / w as f64 - 1e-12);
        }
    }

    #[test]
    fn formula_print_parse_and_eval(a in ast(), x in structure(4, 2), env in proptest::array::uniform3(0usize..4)) {
        let text = render(&a);
        let f = Formula::parse(&text).unwrap();
        let printed = f.to_string();
        let g = Formula::parse(&printed).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string(), printed);
        let mut env = env.map(|v| v % x.size());
        let assignment: Vec<(&str, usize)> = VARS.iter().copied().zip(env.iter().copied()).collect();
        prop_assert_eq!(f.eval(&x, &assignment).unwrap(), truth(&a, &x, &mut env));
    }

    #[test]
    fn ef_game_agrees_with_minimax(x in structure(4, 2), y in structure(4, 2), rounds in 0usize..3) {
        let naive = naive_duplicator(&x, &y, &mut Vec::new(), rounds);
        let expected = if naive { Winner::Duplicator } else { Winner::Spoiler };
        prop_assert_eq!(ef_game(&x, &y, rounds), expected);
    }

    #[test]
    fn density_witness_lands_between(a in small_rational(), b in small_rational(), three in any::<bool>(), t in 0usize..3) {
        let model = if three { Model::S3 } else { Model::S2 };
        prop_assume!(a != b);
        let (x, y) = if order(model, &a, &b) { (a, b) } else { (b, a) };
        let target = Class::from_index(t % model.classes().len()).unwrap();
        let z = density_witness(&x, &y, target, model).unwrap();
        prop_assert!(order(model, &x, &z) && order(model, &z, &y));
        prop_assert_eq!(model.class_of(&z), target);
        prop_assert!(!(z.clone() - &x).is_zero());
    }
}
