//! The acceptance gate: one criterion per numbered check, one printed
//! pass/fail line each. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use confalg::builders::{builtin, build_k2_alt, build_n4, BUILTIN_NAMES};
use confalg::check_axioms;
use confalg::cli;
use confalg::conformal::lambda_bracket;
use confalg::morphism::{
    bounded_escape_search, conjugation_morphism, factorize, is_conf_automorphism, k2_phi,
    kernel_witness, theta, AutoVerdict, Factorization, KernelVerdict, Sl2Pair,
};
use confalg::n4::{structured_bracket, LtgElement, Mat2};
use confalg::parse::{parse_algebra, parse_mat2, print_algebra};
use confalg::ring::{RingElement, RingSpec};
use confalg::sampling::Sampler;
use confalg::scalar::Scalar;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn criterion(
        &mut self,
        n: u32,
        name: &str,
        budget: Option<Duration>,
        f: impl FnOnce() -> Result<(), String>,
    ) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let timed_out = budget.map_or(false, |b| elapsed > b);
        match (&result, timed_out) {
            (Ok(()), false) => {
                println!("criterion {} ({}): pass [{:.1?}]", n, name, elapsed)
            }
            (Ok(()), true) => {
                println!("criterion {} ({}): FAIL (over budget, {:.1?})", n, name, elapsed);
                self.failures.push(format!("{}: over budget ({:?})", name, elapsed));
            }
            (Err(e), _) => {
                println!("criterion {} ({}): FAIL [{:.1?}]", n, name, elapsed);
                self.failures.push(format!("{}: {}", name, e));
            }
        }
    }
}

fn c1_axiom_suite() -> Result<(), String> {
    for name in BUILTIN_NAMES {
        let table = builtin(name).ok_or_else(|| format!("missing built-in {}", name))?;
        let report = check_axioms(&table, 6, 4, 2).map_err(|e| e.to_string())?;
        if !report.passed() {
            return Err(format!("{} fails: {:?}", name, report.counterexample));
        }
    }
    Ok(())
}

fn c2_matrix_form_oracle() -> Result<(), String> {
    let table = build_n4();
    for spec in [RingSpec::Const, RingSpec::Laurent, RingSpec::Trunc(4), RingSpec::Puiseux(2)] {
        // all 64 ordered generator pairs, each generator as a pure element
        for i in 0..8 {
            for j in 0..8 {
                let a = LtgElement::decode(&confalg::ConfElement::generator(i, spec))
                    .map_err(|e| e.to_string())?;
                let b = LtgElement::decode(&confalg::ConfElement::generator(j, spec))
                    .map_err(|e| e.to_string())?;
                let closed = structured_bracket(&a, &b).map_err(|e| e.to_string())?;
                let generic = lambda_bracket(&table, &a.encode(), &b.encode())
                    .map_err(|e| e.to_string())?;
                if closed != generic {
                    return Err(format!("generator pair ({}, {}) over {}", i, j, spec));
                }
            }
        }
        let mut s = Sampler::from_seed(2);
        for k in 0..200 {
            let a = s.ltg(spec, 2);
            let b = s.ltg(spec, 2);
            let closed = structured_bracket(&a, &b).map_err(|e| e.to_string())?;
            let generic =
                lambda_bracket(&table, &a.encode(), &b.encode()).map_err(|e| e.to_string())?;
            if closed != generic {
                return Err(format!("random pair {} over {}", k, spec));
            }
        }
    }
    Ok(())
}

fn c3_dagger_identities() -> Result<(), String> {
    let spec = RingSpec::Laurent;
    let mut s = Sampler::from_seed(3);
    // anti-multiplicativity on products of up to 4 factors:
    // (M1 ... Mk)* = (-1)^(k-1) Mk* ... M1*
    for _ in 0..500 {
        let k = 2 + (s.scalar().re().numer().bits() as usize % 3); // 2..=4
        let ms: Vec<Mat2> = (0..k).map(|_| s.mat2(spec, 2)).collect();
        let mut prod = Mat2::identity(spec);
        for m in &ms {
            prod = prod.mul(m).map_err(|e| e.to_string())?;
        }
        let mut rev = Mat2::identity(spec);
        for m in ms.iter().rev() {
            rev = rev.mul(&m.dagger()).map_err(|e| e.to_string())?;
        }
        if k % 2 == 0 {
            rev = rev.neg();
        }
        if prod.dagger() != rev {
            return Err("anti-multiplicativity".to_string());
        }
    }
    // X Y* + Y X* = tr(X Y*) I
    for _ in 0..500 {
        let x = s.mat2(spec, 2);
        let y = s.mat2(spec, 2);
        let lhs = x
            .mul(&y.dagger())
            .and_then(|a| a.add(&y.mul(&x.dagger())?))
            .map_err(|e| e.to_string())?;
        let rhs = Mat2::ring_scalar_mat(&x.mul(&y.dagger()).map_err(|e| e.to_string())?.trace());
        if lhs != rhs {
            return Err("polarization identity".to_string());
        }
    }
    // det 1 forces A^-1 = -A*
    for _ in 0..500 {
        let a = s.sl2_matrix(spec, 3);
        if a.inverse().map_err(|e| e.to_string())? != a.dagger().neg() {
            return Err("unimodular inverse".to_string());
        }
    }
    Ok(())
}

fn c4_theta_homomorphism() -> Result<(), String> {
    let table = build_n4();
    for spec in [RingSpec::Const, RingSpec::Laurent, RingSpec::Trunc(4), RingSpec::Puiseux(2)] {
        let mut s = Sampler::from_seed(4);
        for k in 0..100 {
            let p1 = s.sl2_pair(spec, 2);
            let p2 = s.sl2_pair(spec, 2);
            let t1 = theta(&p1).map_err(|e| e.to_string())?;
            if is_conf_automorphism(&table, &t1).map_err(|e| e.to_string())?
                != AutoVerdict::Automorphism
            {
                return Err(format!("theta(p) not an automorphism, sample {} over {}", k, spec));
            }
            let t2 = theta(&p2).map_err(|e| e.to_string())?;
            let lhs = theta(&p1.mul(&p2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let rhs = t1.compose(&t2).map_err(|e| e.to_string())?;
            if lhs.images() != rhs.images() {
                return Err(format!("homomorphism law, sample {} over {}", k, spec));
            }
        }
    }
    Ok(())
}

fn c5_kernel_exactness() -> Result<(), String> {
    for spec in [RingSpec::Const, RingSpec::Laurent, RingSpec::Trunc(4)] {
        for a in [1i64, -1] {
            let pair =
                Sl2Pair::scalar_pair(spec, Scalar::from_int(a)).map_err(|e| e.to_string())?;
            match kernel_witness(&pair).map_err(|e| e.to_string())? {
                KernelVerdict::InKernel { a: val } => {
                    let sq = val.mul(&val).map_err(|e| e.to_string())?;
                    if !sq.is_one() || !val.delta().is_zero() {
                        return Err(format!("kernel element not a constant root of 1 over {}", spec));
                    }
                }
                KernelVerdict::NotInKernel { .. } => {
                    return Err(format!("({0}I, {0}I) misclassified over {1}", a, spec));
                }
            }
        }
        let pair = Sl2Pair::new(
            Mat2::identity(spec),
            Mat2::scalar_mat(spec, Scalar::from_int(-1)),
        )
        .map_err(|e| e.to_string())?;
        if !matches!(
            kernel_witness(&pair).map_err(|e| e.to_string())?,
            KernelVerdict::NotInKernel { .. }
        ) {
            return Err(format!("(I, -I) misclassified over {}", spec));
        }
    }
    // brute force in trunc:4: units a0 + a1 t + a2 t^2 + a3 t^3 squaring
    // to 1 must have a0 = +-1 and no higher terms, hence delta = 0
    let spec = RingSpec::Trunc(4);
    let mut roots = Vec::new();
    for c0 in [-1i64, 1] {
        for c1 in -2..=2i64 {
            for c2 in -2..=2i64 {
                for c3 in -2..=2i64 {
                    let mut u = RingElement::scalar(spec, Scalar::from_int(c0));
                    for (k, c) in [(1i64, c1), (2, c2), (3, c3)] {
                        let m = RingElement::monomial(spec, Scalar::from_int(c), k.into())
                            .map_err(|e| e.to_string())?;
                        u = u.add(&m).map_err(|e| e.to_string())?;
                    }
                    if u.mul(&u).map_err(|e| e.to_string())?.is_one() {
                        roots.push(u);
                    }
                }
            }
        }
    }
    if roots.len() != 2 || !roots.iter().all(|r| r.is_constant() && r.delta().is_zero()) {
        return Err("trunc:4 has unexpected square roots of 1".to_string());
    }
    Ok(())
}

fn c6_factorization_round_trip() -> Result<(), String> {
    let table = build_n4();
    let spec = RingSpec::Const;
    let mut s = Sampler::from_seed(6);
    for k in 0..50 {
        let pair = s.sl2_pair(spec, 3);
        let phi = theta(&pair).map_err(|e| e.to_string())?;
        match factorize(&table, &phi).map_err(|e| e.to_string())? {
            Factorization::Pair(rec) => {
                let back = theta(&rec).map_err(|e| e.to_string())?;
                if back.images() != phi.images() {
                    return Err(format!("round trip fails on sample {}", k));
                }
            }
            Factorization::ExtensionRequired { .. } => {
                return Err(format!("theta input reported extension-required, sample {}", k));
            }
        }
    }
    let a0 = parse_mat2(spec, "[[2, 1], [0, 1]]").map_err(|e| e.to_string())?;
    let phi = conjugation_morphism(&a0).map_err(|e| e.to_string())?;
    match factorize(&table, &phi).map_err(|e| e.to_string())? {
        Factorization::ExtensionRequired { .. } => Ok(()),
        Factorization::Pair(_) => Err("det-2 conjugation factored over Q(i)".to_string()),
    }
}

fn c7_escaping_involution() -> Result<(), String> {
    let k2 = build_k2_alt();
    let phi = k2_phi(k2.basis(), RingSpec::Const).map_err(|e| e.to_string())?;
    if phi.is_v_stable() {
        return Err("phi should not be V-stable".to_string());
    }
    if !phi.compose(&phi).map_err(|e| e.to_string())?.is_identity() {
        return Err("phi^2 != id".to_string());
    }
    if is_conf_automorphism(&k2, &phi).map_err(|e| e.to_string())? != AutoVerdict::Automorphism {
        return Err("phi not verified as an automorphism".to_string());
    }
    let n4 = build_n4();
    for spec in [RingSpec::Const, RingSpec::Laurent] {
        if bounded_escape_search(&n4, spec, 1).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("unexpected escaping automorphism for n4 over {}", spec));
        }
    }
    Ok(())
}

fn c8_base_change_functoriality() -> Result<(), String> {
    let table = build_n4();
    let src = RingSpec::Laurent;
    let dst = RingSpec::Puiseux(2);
    let mut s = Sampler::from_seed(8);
    for k in 0..50 {
        let a = s.conf_element(8, src, 1, 3);
        let b = s.conf_element(8, src, 1, 3);
        let lhs = lambda_bracket(&table, &a, &b)
            .and_then(|p| p.embed(dst))
            .map_err(|e| e.to_string())?;
        let rhs = lambda_bracket(&table, &a.embed(dst).unwrap(), &b.embed(dst).unwrap())
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("bracket does not commute with embedding, sample {}", k));
        }
        let pair = s.sl2_pair(src, 2);
        let embedded = Sl2Pair::new(
            pair.a.embed(dst).map_err(|e| e.to_string())?,
            pair.b.embed(dst).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let lhs: Vec<_> = theta(&pair)
            .map_err(|e| e.to_string())?
            .images()
            .iter()
            .map(|e| e.embed(dst).unwrap())
            .collect();
        let rhs = theta(&embedded).map_err(|e| e.to_string())?;
        if &lhs[..] != rhs.images() {
            return Err(format!("theta does not commute with embedding, sample {}", k));
        }
    }
    Ok(())
}

fn c9_cli_goldens() -> Result<(), String> {
    let cases: [(&[&str], &str); 8] = [
        (&["check", "n4"], include_str!("golden/check_n4.txt")),
        (
            &["bracket", "n4", "--ring", "laurent", "L ⊗ t", "L ⊗ 1"],
            include_str!("golden/bracket_ll.txt"),
        ),
        (
            &["bracket", "n4", "--ring", "laurent", "L ⊗ t", "T1 ⊗ 1"],
            include_str!("golden/bracket_lt.txt"),
        ),
        (
            &["bracket", "n4", "--ring", "laurent", "T1 ⊗ 1", "T2 ⊗ 1"],
            include_str!("golden/bracket_tt.txt"),
        ),
        (
            &["bracket", "n4", "--ring", "laurent", "L ⊗ t", "G1 ⊗ 1"],
            include_str!("golden/bracket_lg.txt"),
        ),
        (
            &["bracket", "n4", "--ring", "laurent", "T3 ⊗ 1", "G1 ⊗ 1"],
            include_str!("golden/bracket_tg.txt"),
        ),
        (
            &["bracket", "n4", "--ring", "laurent", "G1 ⊗ 1", "Gb1 ⊗ t"],
            include_str!("golden/bracket_gg.txt"),
        ),
        (&["demo", "k2-phi"], include_str!("golden/demo_k2_phi.txt")),
    ];
    for (args, golden) in cases {
        let v: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let (out, code) = cli::run(&v);
        if code != 0 {
            return Err(format!("{:?} exited {}", args, code));
        }
        if out != golden {
            return Err(format!("{:?} drifted from its golden output", args));
        }
    }
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("algebras");
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().map_or(true, |e| e != "alg") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let table = parse_algebra(&text).map_err(|e| e.to_string())?;
        if print_algebra(&table) != text {
            return Err(format!("{} does not round trip", path.display()));
        }
    }
    Ok(())
}

#[test]
fn acceptance_gate() {
    let mut gate = Gate { failures: Vec::new() };
    let s = Duration::from_secs;
    gate.criterion(1, "axiom suite on all built-ins", Some(s(30)), c1_axiom_suite);
    gate.criterion(2, "closed-form bracket matches engine", None, c2_matrix_form_oracle);
    gate.criterion(3, "dagger identities", None, c3_dagger_identities);
    gate.criterion(4, "theta is a homomorphism into automorphisms", Some(s(60)), c4_theta_homomorphism);
    gate.criterion(5, "kernel classification and square roots of 1", None, c5_kernel_exactness);
    gate.criterion(6, "factorization round trip and extension case", None, c6_factorization_round_trip);
    gate.criterion(7, "escaping involution and bounded search", Some(s(120)), c7_escaping_involution);
    gate.criterion(8, "base change functoriality", None, c8_base_change_functoriality);
    gate.criterion(9, "CLI goldens and algebra file round trips", None, c9_cli_goldens);
    assert!(gate.failures.is_empty(), "failed criteria:\n{}", gate.failures.join("\n"));
}
