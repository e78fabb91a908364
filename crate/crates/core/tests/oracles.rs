//! Independent oracles for composition, the matrix image and the closure trace.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vtl_core::diagram::{AlgebraElement, Endpoint, Matching};
use vtl_core::rep::{evaluate_word, DiagramRep, MatrixRep, Representation};
use vtl_core::sample::{random_element, random_word};
use vtl_core::scalar::random_rational;
use vtl_core::tensor::{factor_matching, factor_matching_via_e1, rep_element_in, rep_matching};
use vtl_core::{DenseMatrix, QuadScalar, RepConfig, RhoParams};

fn slot(e: Endpoint, n: usize) -> usize {
    match e {
        Endpoint::Top(k) => k - 1,
        Endpoint::Bottom(k) => n + k - 1,
    }
}

/// Matrix of a diagram read directly as a product of Kronecker deltas over its pairs.
fn delta_tensor(m: &Matching, d: usize) -> DenseMatrix {
    let n = m.n();
    let dim = d.pow(n as u32);
    let digits = |idx: usize| -> Vec<usize> { (0..n).rev().map(|k| (idx / d.pow(k as u32)) % d).collect() };
    let mut out = DenseMatrix::zeros(dim, dim);
    for row in 0..dim {
        let top = digits(row);
        for col in 0..dim {
            let bottom = digits(col);
            let label = |s: usize| if s < n { top[s] } else { bottom[s - n] };
            let ok = m.pairs().iter().all(|&(x, y)| label(slot(x, n)) == label(slot(y, n)));
            if ok {
                out.set(row, col, QuadScalar::one());
            }
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Stack `x` over `y` by brute union-find over the three rows of points.
fn brute_compose(x: &Matching, y: &Matching) -> (Matching, usize) {
    let n = x.n();
    // rows: 0..n upper tops, n..2n glued middle, 2n..3n lower bottoms
    let upper = |e: Endpoint| match e {
        Endpoint::Top(k) => k - 1,
        Endpoint::Bottom(k) => n + k - 1,
    };
    let lower = |e: Endpoint| match e {
        Endpoint::Top(k) => n + k - 1,
        Endpoint::Bottom(k) => 2 * n + k - 1,
    };
    let mut uf = UnionFind((0..3 * n).collect());
    for (a, b) in x.pairs() {
        uf.union(upper(a), upper(b));
    }
    for (a, b) in y.pairs() {
        uf.union(lower(a), lower(b));
    }
    let boundary: Vec<usize> = (0..n).chain(2 * n..3 * n).collect();
    let endpoint = |p: usize| if p < n { Endpoint::Top(p + 1) } else { Endpoint::Bottom(p - 2 * n + 1) };
    let mut pairs = Vec::new();
    for (k, &p) in boundary.iter().enumerate() {
        for &q in &boundary[k + 1..] {
            if uf.find(p) == uf.find(q) {
                pairs.push((endpoint(p), endpoint(q)));
            }
        }
    }
    let mut roots: Vec<usize> = (0..3 * n).map(|p| uf.find(p)).collect();
    let boundary_roots: Vec<usize> = boundary.iter().map(|&p| roots[p]).collect();
    roots.sort_unstable();
    roots.dedup();
    let loops = roots.iter().filter(|r| !boundary_roots.contains(r)).count();
    (Matching::new(n, pairs).unwrap(), loops)
}

#[test]
fn compose_agrees_with_union_find() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in 1..=5 {
        for _ in 0..100 {
            let x = Matching::random(n, &mut rng);
            let y = Matching::random(n, &mut rng);
            let (m, loops) = x.compose(&y).unwrap();
            assert_eq!((m.clone(), loops), brute_compose(&x, &y), "{x} over {y}");
            assert!(loops <= n);
        }
    }
}

#[test]
fn compose_is_associative_with_additive_loops() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let (x, y, z) = (Matching::random(n, &mut rng), Matching::random(n, &mut rng), Matching::random(n, &mut rng));
        let (xy, l1) = x.compose(&y).unwrap();
        let (left, l2) = xy.compose(&z).unwrap();
        let (yz, r1) = y.compose(&z).unwrap();
        let (right, r2) = x.compose(&yz).unwrap();
        assert_eq!(left, right);
        assert_eq!(l1 + l2, r1 + r2);
    }
}

#[test]
fn identity_is_neutral() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..20 {
        let m = Matching::random(3, &mut rng);
        assert_eq!(Matching::identity(3).compose(&m).unwrap(), (m.clone(), 0));
        assert_eq!(m.compose(&Matching::identity(3)).unwrap(), (m, 0));
    }
}

#[test]
fn matrix_image_matches_delta_tensor() {
    for (n, d) in [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let rep = MatrixRep::new(RepConfig::new(n, d).unwrap()).unwrap();
        for m in Matching::all(n) {
            assert_eq!(rep_matching(&m, &rep).unwrap(), delta_tensor(&m, d), "{m} at d={d}");
        }
    }
    let rep = MatrixRep::new(RepConfig::new(4, 2).unwrap()).unwrap();
    for m in Matching::all(4) {
        assert_eq!(rep_matching(&m, &rep).unwrap(), delta_tensor(&m, 2), "{m}");
    }
}

#[test]
fn two_factorizations_give_the_same_matrix() {
    let rep = MatrixRep::new(RepConfig::new(4, 2).unwrap()).unwrap();
    let params = RhoParams::rational(1, 0, 0, 2);
    for m in Matching::all(4) {
        let image = |word: Vec<vtl_core::presentation::GeneratorSymbol>| {
            let w = vtl_core::GeneratorWord::new(4, word).unwrap();
            evaluate_word(&w, &rep, &params).unwrap()
        };
        let a = factor_matching(&m).unwrap();
        let b = factor_matching_via_e1(&m).unwrap();
        assert_eq!(a.loops, 0);
        assert_eq!(b.loops, 0);
        assert_eq!(image(a.word), image(b.word), "{m}");
    }
}

#[test]
fn homomorphism_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let params = RhoParams::rational(1, 0, 0, 2);
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let rep = MatrixRep::new(RepConfig::new(n, 2).unwrap()).unwrap();
        let diagrams = DiagramRep::new(n, QuadScalar::from_int(2)).unwrap();
        let w = random_word(n, 8, &mut rng);
        let element = evaluate_word(&w, &diagrams, &params).unwrap();
        let factors = w
            .symbols()
            .iter()
            .map(|&s| rep.symbol(s, &params).unwrap())
            .fold(rep.identity(), |acc, g| acc.mul(&g).unwrap());
        assert_eq!(rep_element_in(&element, &rep).unwrap(), factors, "{w}");
    }
}

#[test]
fn homomorphism_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(2..=3);
        let rep = MatrixRep::new(RepConfig::new(n, d).unwrap()).unwrap();
        let lambda = QuadScalar::from_int(d as i64);
        let x = random_element(n, 3, &mut rng);
        let y = random_element(n, 3, &mut rng);
        let xy = x.multiply(&y, &lambda).unwrap();
        let lhs = rep_element_in(&xy, &rep).unwrap();
        let rhs = rep_element_in(&x, &rep).unwrap().mul(&rep_element_in(&y, &rep).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn closure_trace_cyclicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let lambda = QuadScalar::rational(random_rational(&mut rng, 7, 3));
        let x = random_element(n, 3, &mut rng);
        let y = random_element(n, 3, &mut rng);
        let xy = x.multiply(&y, &lambda).unwrap().closure_trace(&lambda).unwrap();
        let yx = y.multiply(&x, &lambda).unwrap().closure_trace(&lambda).unwrap();
        assert_eq!(xy, yx);
    }
}

#[test]
fn closure_trace_by_hand() {
    let lambda = QuadScalar::from_int(5);
    assert_eq!(AlgebraElement::identity(3).closure_trace(&lambda).unwrap(), QuadScalar::from_int(125));
    assert_eq!(AlgebraElement::e(1, 2).unwrap().closure_trace(&lambda).unwrap(), lambda);
    // closing v_1 joins both strands into one loop
    assert_eq!(AlgebraElement::v(1, 2).unwrap().closure_trace(&lambda).unwrap(), lambda);
}

#[test]
fn rho_square_matches_manual_expansion() {
    // ρ² = (a² + c²) + (2ab + b²λ + 2bc)E + 2ac·v, using Ev = vE = E and v² = 1
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..20 {
        let [a, b, c, l] = [0; 4].map(|_| QuadScalar::rational(random_rational(&mut rng, 9, 4)));
        let p = RhoParams::new(a.clone(), b.clone(), c.clone(), l.clone()).unwrap();
        let rep = DiagramRep::new(2, l.clone()).unwrap();
        let rho = rep.rho(1, &p).unwrap();
        let square = rho.multiply(&rho, &l).unwrap();
        let id_coeff = a.try_mul(&a).unwrap().try_add(&c.try_mul(&c).unwrap()).unwrap();
        let two = QuadScalar::from_int(2);
        let e_coeff = two
            .try_mul(&a)
            .unwrap()
            .try_mul(&b)
            .unwrap()
            .try_add(&b.try_mul(&b).unwrap().try_mul(&l).unwrap())
            .unwrap()
            .try_add(&two.try_mul(&b).unwrap().try_mul(&c).unwrap())
            .unwrap();
        let v_coeff = two.try_mul(&a).unwrap().try_mul(&c).unwrap();
        let expected = AlgebraElement::from_terms(
            2,
            [
                (Matching::identity(2), id_coeff),
                (Matching::e(1, 2).unwrap(), e_coeff),
                (Matching::v(1, 2).unwrap(), v_coeff),
            ],
        )
        .unwrap();
        assert_eq!(square, expected);
    }
    // a = 1, b = −1, c = 0, λ = 2: (1 − E)² = 1 − 2E + 2E = 1
    let p = RhoParams::rational(1, -1, 0, 2);
    let rep = DiagramRep::new(2, QuadScalar::from_int(2)).unwrap();
    let rho = rep.rho(1, &p).unwrap();
    assert_eq!(rho.multiply(&rho, &p.lambda).unwrap(), AlgebraElement::identity(2));
}
