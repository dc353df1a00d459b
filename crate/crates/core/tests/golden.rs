use harmspec::canon::is_isomorphic;
use harmspec::census::{self, census};
use harmspec::charpoly::{char_poly, factored_display, lambda_k, ClosedForm};
use harmspec::generators::{generate, FamilySpec};
use harmspec::graph::Graph;
use harmspec::graph6;
use harmspec::harmonic::{harmonic_index, harmonic_matrix};
use harmspec::matrix::SymRatMatrix;
use harmspec::poly::RatPolynomial;
use harmspec::rational::{int, rat, Rational};
use harmspec::spectrum::{
    eigenvalues_symmetric, harmonic_energy, newton_check, regular_shortcut_energy, DEFAULT_TOL,
};
use num_traits::{One, Zero};

fn g(spec: FamilySpec) -> Graph {
    generate(&spec).unwrap()
}

fn poly(cs: &[(i64, i64)]) -> RatPolynomial {
    RatPolynomial::from_coeffs(cs.iter().map(|&(a, b)| rat(a, b)).collect())
}

/// det(xI − M) by fraction-exact Gaussian elimination.
fn det_shifted(m: &SymRatMatrix, x: &Rational) -> Rational {
    let n = m.order();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = -m.get(i, j).clone();
                    if i == j {
                        e + x
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

#[test]
fn char_poly_agrees_with_determinant_oracle() {
    let graphs = [
        g(FamilySpec::Petersen),
        g(FamilySpec::Path(7)),
        g(FamilySpec::Friendship(3)),
        g(FamilySpec::Book(2)),
        g(FamilySpec::DutchWindmill { m: 5, n: 2 }),
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 5)]).unwrap(),
    ];
    let points: Vec<Rational> = [(0, 1), (1, 1), (-2, 3), (5, 7), (3, 1), (-11, 4)]
        .iter()
        .map(|&(a, b)| rat(a, b))
        .collect();
    for graph in &graphs {
        let h = harmonic_matrix(graph);
        let p = char_poly(&h);
        assert_eq!(p.degree(), Some(graph.order()));
        for x in &points {
            assert_eq!(p.evaluate(x), det_shifted(&h, x));
        }
    }
}

#[test]
fn graph_construction_examples() {
    let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert_eq!(k3.edge_count(), 3);
    let single = Graph::from_edges(1, &[]).unwrap();
    assert_eq!((single.order(), single.edge_count()), (1, 0));
    let f2 = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
    assert_eq!((f2.order(), f2.edge_count()), (5, 6));
    assert!(is_isomorphic(&f2, &g(FamilySpec::Friendship(2))).unwrap());
}

#[test]
fn degree_examples() {
    assert_eq!(
        g(FamilySpec::Complete(4)).degrees().as_slice(),
        &[3, 3, 3, 3]
    );
    assert_eq!(
        g(FamilySpec::Friendship(2)).degrees().as_slice(),
        &[4, 2, 2, 2, 2]
    );
    assert_eq!(g(FamilySpec::Path(3)).degrees().as_slice(), &[1, 2, 1]);
}

#[test]
fn graph6_examples() {
    let d = graph6::decode("D?{").unwrap();
    assert_eq!(d.order(), 5);
    assert_eq!(graph6::encode(&d).unwrap(), "D?{");
    assert_eq!(graph6::encode(&Graph::empty(0)).unwrap(), "?");
}

#[test]
fn components_and_unions() {
    let k4 = g(FamilySpec::Complete(4));
    let k33 = g(FamilySpec::CompleteBipartite { m: 3, n: 3 });
    let u = Graph::disjoint_union(&[k4.clone(), k33.clone()]);
    assert_eq!(u.degrees().regular_degree(), Some(3));
    let mut sizes: Vec<usize> = u.components().iter().map(Graph::order).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [4, 6]);
    assert_eq!(g(FamilySpec::Petersen).components().len(), 1);
    assert_eq!(Graph::empty(5).components().len(), 5);
    assert_eq!(Graph::disjoint_union(std::slice::from_ref(&k4)), k4);
}

#[test]
fn family_examples() {
    for n in 1..=6 {
        let d4 = g(FamilySpec::DutchWindmill { m: 4, n });
        assert_eq!((d4.order(), d4.edge_count()), (3 * n + 1, 4 * n));
    }
    for m in 3..=8 {
        let one = g(FamilySpec::DutchWindmill { m, n: 1 });
        assert!(is_isomorphic(&one, &g(FamilySpec::Cycle(m))).unwrap());
    }
    assert!(is_isomorphic(&g(FamilySpec::Friendship(1)), &g(FamilySpec::Complete(3))).unwrap());
    assert!(is_isomorphic(&g(FamilySpec::Book(1)), &g(FamilySpec::Cycle(4))).unwrap());
    let p = g(FamilySpec::Petersen);
    assert_eq!(p.degrees().regular_degree(), Some(3));
    assert_eq!(p.girth(), Some(5));
    assert_eq!((p.order(), p.edge_count()), (10, 15));
}

#[test]
fn harmonic_matrix_examples() {
    for n in 2..=8 {
        let h = harmonic_matrix(&g(FamilySpec::Complete(n)));
        for i in 0..n {
            for j in 0..n {
                let want = if i == j {
                    rat(0, 1)
                } else {
                    rat(1, n as i64 - 1)
                };
                assert_eq!(h.get(i, j), &want);
            }
        }
        assert_eq!(
            harmonic_index(&g(FamilySpec::Complete(n))),
            rat(n as i64, 2)
        );
    }
    assert_eq!(harmonic_matrix(&g(FamilySpec::Path(2))).get(0, 1), &int(1));
    let hp = harmonic_matrix(&g(FamilySpec::Petersen));
    assert!(hp.rows().flatten().all(|e| e.is_zero() || *e == rat(1, 3)));
    assert_eq!(harmonic_index(&Graph::empty(4)), rat(0, 1));
    assert_eq!(harmonic_index(&g(FamilySpec::Path(3))), rat(4, 3));
}

#[test]
fn polynomial_examples() {
    let step = &(&poly(&[(-1, 4), (0, 1), (1, 1)]) * &RatPolynomial::x())
        + &RatPolynomial::x().scale(&rat(-1, 4));
    assert_eq!(step, poly(&[(0, 1), (-1, 2), (0, 1), (1, 1)]));
    assert_eq!(
        poly(&[(-1, 1), (0, 1), (1, 1)]).evaluate(&int(1)),
        rat(0, 1)
    );
    assert_eq!(
        poly(&[(1, 2), (1, 1)]).pow(2),
        poly(&[(1, 4), (1, 1), (1, 1)])
    );
}

#[test]
fn charpoly_examples() {
    let k3 = char_poly(&harmonic_matrix(&g(FamilySpec::Complete(3))));
    assert_eq!(k3, poly(&[(-1, 4), (-3, 4), (0, 1), (1, 1)]));
    let s4 = char_poly(&harmonic_matrix(&g(FamilySpec::Star(4))));
    assert_eq!(s4, poly(&[(0, 1), (0, 1), (-3, 4), (0, 1), (1, 1)]));
    let pet = char_poly(&harmonic_matrix(&g(FamilySpec::Petersen)));
    let want = &(&RatPolynomial::linear_root(&int(1))
        * &RatPolynomial::linear_root(&rat(-2, 3)).pow(4))
        * &RatPolynomial::linear_root(&rat(1, 3)).pow(5);
    assert_eq!(pet, want);
    assert_eq!(
        char_poly(&SymRatMatrix::zeros(3)),
        RatPolynomial::monomial(int(1), 3)
    );
}

#[test]
fn lambda_examples() {
    assert_eq!(lambda_k(0), RatPolynomial::one());
    assert_eq!(lambda_k(2), poly(&[(-1, 4), (0, 1), (1, 1)]));
    assert_eq!(lambda_k(3), poly(&[(0, 1), (-1, 2), (0, 1), (1, 1)]));
}

#[test]
fn closed_form_examples() {
    assert_eq!(
        ClosedForm::Cycle(3).polynomial().unwrap(),
        poly(&[(-1, 4), (-3, 4), (0, 1), (1, 1)])
    );
    assert_eq!(
        ClosedForm::PathProof(4).polynomial().unwrap(),
        poly(&[(16, 81), (0, 1), (-41, 36), (0, 1), (1, 1)])
    );
    let d41 = ClosedForm::Windmill4(1).polynomial().unwrap();
    assert_eq!(d41, poly(&[(0, 1), (0, 1), (-1, 1), (0, 1), (1, 1)]));
    assert_eq!(d41, char_poly(&harmonic_matrix(&g(FamilySpec::Cycle(4)))));
    assert!(ClosedForm::Cycle(2).polynomial().is_err());
    assert!(ClosedForm::PathProof(3).polynomial().is_err());
}

#[test]
fn factored_display_examples() {
    assert_eq!(
        factored_display(&poly(&[(-1, 4), (-3, 4), (0, 1), (1, 1)])),
        "(λ − 1)(λ + 1/2)^2"
    );
    assert_eq!(
        factored_display(&poly(&[(-2, 1), (0, 1), (1, 1)])),
        "λ^2 − 2"
    );
    assert_eq!(factored_display(&RatPolynomial::monomial(int(1), 5)), "λ^5");
}

#[test]
fn spectrum_examples() {
    let s = harmonic_energy(&g(FamilySpec::Petersen), DEFAULT_TOL)
        .unwrap()
        .spectrum;
    let want = [1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]
        .into_iter()
        .chain([-2.0 / 3.0; 4]);
    for (a, b) in s.eigenvalues.iter().zip(want) {
        assert!((a - b).abs() < 1e-10);
    }
    let z = eigenvalues_symmetric(&vec![vec![0.0; 4]; 4], DEFAULT_TOL).unwrap();
    assert!(z.eigenvalues.iter().all(|&x| x == 0.0));
    let p2 = harmonic_energy(&g(FamilySpec::Path(2)), DEFAULT_TOL)
        .unwrap()
        .spectrum;
    assert!((p2.eigenvalues[0] - 1.0).abs() < 1e-12 && (p2.eigenvalues[1] + 1.0).abs() < 1e-12);
}

#[test]
fn energy_examples() {
    let he = |spec| harmonic_energy(&g(spec), DEFAULT_TOL).unwrap().he;
    for n in 2..=12 {
        assert!((he(FamilySpec::Complete(n)) - 2.0).abs() < 1e-9);
        let nf = n as f64;
        assert!((he(FamilySpec::Star(n)) - 4.0 * (nf - 1.0).sqrt() / nf).abs() < 1e-9);
    }
    for (m, n) in [(1, 1), (2, 5), (3, 3), (4, 8)] {
        let (mf, nf) = (m as f64, n as f64);
        let want = 2.0 * (4.0 * mf * nf / ((mf + nf) * (mf + nf))).sqrt();
        assert!((he(FamilySpec::CompleteBipartite { m, n }) - want).abs() < 1e-9);
    }
    assert!((he(FamilySpec::Petersen) - 16.0 / 3.0).abs() < 1e-9);
}

#[test]
fn regular_shortcut_examples() {
    let u = Graph::disjoint_union(&[
        g(FamilySpec::Complete(4)),
        g(FamilySpec::CompleteBipartite { m: 3, n: 3 }),
    ]);
    assert!((regular_shortcut_energy(&u, DEFAULT_TOL).unwrap().he - 4.0).abs() < 1e-9);
    for n in 3..=9 {
        let c = g(FamilySpec::Cycle(n));
        let a = regular_shortcut_energy(&c, DEFAULT_TOL).unwrap().he;
        assert!((a - harmonic_energy(&c, DEFAULT_TOL).unwrap().he).abs() < 1e-9);
    }
    assert!(regular_shortcut_energy(&g(FamilySpec::Path(4)), DEFAULT_TOL).is_err());
}

#[test]
fn newton_examples() {
    let pet = g(FamilySpec::Petersen);
    let p = char_poly(&harmonic_matrix(&pet));
    let s = harmonic_energy(&pet, DEFAULT_TOL).unwrap().spectrum;
    assert!(newton_check(&p, &s).within(1e-9));
    let z = eigenvalues_symmetric(&[vec![0.0, 0.0], vec![0.0, 0.0]], DEFAULT_TOL).unwrap();
    assert_eq!(
        newton_check(&RatPolynomial::monomial(int(1), 2), &z).worst(),
        0.0
    );
    let mut bad = s.clone();
    bad.eigenvalues[0] += 1e-3;
    assert!(!newton_check(&p, &bad).within(1e-9));
}

#[test]
fn census_examples() {
    let c4 = census(4, 3, DEFAULT_TOL).unwrap();
    assert_eq!(c4.records.len(), 1);
    assert_eq!(c4.classes.len(), 1);
    assert!((c4.classes[0].he - 2.0).abs() < 1e-9);
    assert!(is_isomorphic(&c4.graph(1), &g(FamilySpec::Complete(4))).unwrap());

    let c6 = census(6, 3, DEFAULT_TOL).unwrap();
    assert_eq!(c6.records.len(), 2);
    assert!(c6
        .find_isomorphic(&g(FamilySpec::CompleteBipartite { m: 3, n: 3 }))
        .unwrap()
        .is_some());

    let c10 = census(10, 3, DEFAULT_TOL).unwrap();
    assert_eq!(c10.records.len(), 21);
    assert_eq!(c10.records.iter().filter(|r| r.connected).count(), 19);
    assert_eq!(c10.shared_class_sizes(), [2, 2, 2]);
    assert_eq!(c10.singleton_count(), 15);
    for r in &c10.records {
        assert_eq!(
            graph6::encode(&graph6::decode(&r.graph6).unwrap()).unwrap(),
            r.graph6
        );
    }
    let max = c10.max_class().unwrap();
    assert!((max.he - 16.0 / 3.0).abs() < 1e-9);
    let pet = c10
        .find_isomorphic(&g(FamilySpec::Petersen))
        .unwrap()
        .unwrap();
    assert!(max.members.contains(&pet));

    let cmp = census::reference_compare(&c10.records, &census::REFERENCE_CUBIC10_HE).unwrap();
    assert!(cmp.matched >= 20);
    let fives = census::REFERENCE_CUBIC10_HE
        .iter()
        .filter(|&&v| v == 5.333)
        .count();
    assert_eq!(fives, 2);
    assert!(census::census(5, 3, DEFAULT_TOL).is_err());
}
