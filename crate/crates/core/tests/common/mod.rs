//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use blfkit_core::algtop::IntMatrix;
use blfkit_core::fibration::{Base, BrokenFibration, Cycle, DeclaredParity, LefschetzPiece, RoundCobordism};
use blfkit_core::surface::CurveWord;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

pub type Mat = Vec<Vec<i128>>;

/// Runner with a fixed seed so every run sees the same cases.
pub fn seeded_runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() })
}

pub fn to_mat(m: &IntMatrix) -> Mat {
    m.to_i64_rows().expect("small entries").into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    (0..n).map(|i| (0..p).map(|j| (0..m).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Intersection pairing in the basis `a1, b1, a2, b2, …` with `a_i · b_i = 1`.
pub fn pairing(x: &[i128], y: &[i128]) -> i128 {
    x.chunks(2).zip(y.chunks(2)).map(|(p, q)| p[0] * q[1] - p[1] * q[0]).sum()
}

/// Gram matrix of the pairing.
pub fn gram(g: usize) -> Mat {
    let n = 2 * g;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut ei = vec![0; n];
                    let mut ej = vec![0; n];
                    ei[i] = 1;
                    ej[j] = 1;
                    pairing(&ei, &ej)
                })
                .collect()
        })
        .collect()
}

pub fn preserves_pairing(m: &Mat, g: usize) -> bool {
    let j = gram(g);
    mul(&mul(&transpose(m), &j), m) == j
}

/// Matrix of `x ↦ x + s⟨x, v⟩v`, column by column.
pub fn transvection(v: &[i128], s: i128) -> Mat {
    let n = v.len();
    let cols: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            let t = s * pairing(&e, v);
            (0..n).map(|i| e[i] + t * v[i]).collect()
        })
        .collect();
    transpose(&cols)
}

/// Homology class of a word written as `a1 B2 …`, computed from the text.
pub fn class_of(word: &str, genus: usize) -> Vec<i128> {
    let mut v = vec![0i128; 2 * genus];
    for tok in word.split_whitespace() {
        let (head, num) = tok.split_at(1);
        let h: usize = num.parse().expect("handle index");
        let lower = head.to_ascii_lowercase();
        let idx = 2 * (h - 1) + usize::from(lower == "b");
        v[idx] += if head == lower { 1 } else { -1 };
    }
    v
}

/// Determinant by cofactor expansion.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the factors are `d_k / d_{k-1}`.
pub fn invariant_factors_oracle(m: &Mat) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r.min(c) {
        let mut d = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Mat = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

/// Euler characteristic from the chain data alone.
pub fn euler_oracle(f: &BrokenFibration) -> i64 {
    let chi = |l: &LefschetzPiece| l.fiber.components().iter().map(|&g| 2 - 2 * g as i64).sum::<i64>();
    let n: i64 = f.levels().iter().map(|l| l.cycles.len() as i64).sum();
    chi(f.lower()) + chi(f.higher()) + n - i64::from(f.base_points())
}

pub fn word(s: &str) -> CurveWord {
    CurveWord::parse(s).expect("generated word")
}

// Strategies.

/// Word text of 1 to 6 letters on a genus-`g` surface, `g ≥ 1`.
pub fn word_text(g: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((1..=g, any::<bool>(), any::<bool>()), 1..=6).prop_map(|letters| {
        letters
            .into_iter()
            .map(|(h, is_b, inv)| {
                let c = match (is_b, inv) {
                    (false, false) => 'a',
                    (false, true) => 'A',
                    (true, false) => 'b',
                    (true, true) => 'B',
                };
                format!("{c}{h}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    })
}

pub fn nonseparating_word(g: usize) -> impl Strategy<Value = String> {
    word_text(g).prop_filter("nonzero class", move |w| class_of(w, g).iter().any(|&x| x != 0))
}

fn cycles_on(g: usize) -> BoxedStrategy<Vec<Cycle>> {
    if g == 0 {
        return Just(Vec::new()).boxed();
    }
    prop::collection::vec((word_text(g), any::<bool>()), 0..=3)
        .prop_map(|cs| {
            cs.into_iter()
                .map(|(w, neg)| if neg { Cycle::negative(word(&w)) } else { Cycle::positive(word(&w)) })
                .collect()
        })
        .boxed()
}

/// Directed fibration over the sphere with connected fibers: genus
/// `g0, g0+1, …`, each round attached along a single generator.
pub fn directed_fibration(min_genus: usize) -> impl Strategy<Value = BrokenFibration> {
    (min_genus..=min_genus + 2, 0usize..=3)
        .prop_flat_map(|(g0, r)| {
            let levels: Vec<_> = (0..=r).map(|i| cycles_on(g0 + i)).collect();
            let rounds: Vec<_> = (0..r).map(|i| (1..=g0 + i + 1, any::<bool>())).collect();
            let sections = prop::collection::vec(-3i64..=3, 0..=2);
            (Just(g0), levels, rounds, sections)
        })
        .prop_map(|(g0, levels, rounds, sections)| {
            let levels =
                levels.into_iter().enumerate().map(|(i, cycles)| LefschetzPiece::with_cycles(g0 + i, cycles)).collect();
            let rounds = rounds
                .into_iter()
                .map(|(k, is_b)| {
                    let w = format!("{}{k}", if is_b { 'b' } else { 'a' });
                    RoundCobordism::new(word(&w), DeclaredParity::Auto)
                })
                .collect();
            BrokenFibration::new(Base::Sphere, levels, rounds).expect("shape").with_sections(sections)
        })
}

/// A directed fibration with a negative node of nonzero class appended to
/// the bottom level; returns the flat index of that node.
pub fn with_negative_node() -> impl Strategy<Value = (BrokenFibration, usize)> {
    directed_fibration(1)
        .prop_flat_map(|f| {
            let g = f.lower().genus();
            (Just(f), nonseparating_word(g))
        })
        .prop_map(|(f, w)| {
            let mut levels = f.levels().to_vec();
            levels[0].cycles.push(Cycle::negative(word(&w)));
            let index = levels[0].cycles.len() - 1;
            let g = BrokenFibration::new(Base::Sphere, levels, f.rounds().to_vec())
                .expect("shape")
                .with_sections(f.sections().to_vec());
            (g, index)
        })
}

/// Presentations with up to 4 generators and 4 relators of length ≤ 6.
pub fn presentation() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=4).prop_flat_map(|n| {
        let letter = (1..=n as i64, any::<bool>()).prop_map(|(k, inv)| if inv { -k } else { k });
        (Just(n), prop::collection::vec(prop::collection::vec(letter, 0..=6), 0..=4))
    })
}

pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// Genus and a list of signed twist curves as coordinate vectors.
pub fn twist_list() -> impl Strategy<Value = (usize, Vec<(Vec<i64>, bool)>)> {
    (1usize..=3).prop_flat_map(|g| {
        (Just(g), prop::collection::vec((prop::collection::vec(-2i64..=2, 2 * g), any::<bool>()), 1..=8))
    })
}
