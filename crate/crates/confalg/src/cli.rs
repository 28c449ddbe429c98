//! Command dispatch for the `confalg` binary. `run` is a pure function from
//! argument list to (output, exit code) so the golden tests can call it
//! directly; the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error.

use std::fmt::Write as _;

use crate::builders::{builtin, BUILTIN_NAMES};
use crate::conformal::{check_axioms, lambda_bracket, StructureTable};
use crate::error::ConfError;
use crate::morphism::{
    bounded_escape_search, factorize, is_conf_automorphism, k2_phi, kernel_witness, theta,
    AutoVerdict, ConfMorphism, Factorization, KernelVerdict, Sl2Pair,
};
use crate::parse::{
    parse_algebra, parse_conf_element, parse_mat2, parse_ring_spec, render_conf_element,
    render_lambda_poly,
};
use crate::ring::RingSpec;
use crate::sampling::Sampler;

const USAGE: &str = "\
usage: confalg <command> [options]

commands:
  check <algebra>                      run the CS0-CS3 axiom checks
  bracket <algebra> <a> <b>            lambda-bracket of two elements
  theta [<A> <B>]                      generator images of theta_{A,B}
  verify-theta [<A> <B>]               check that theta_{A,B} is an automorphism
  kernel <A> <B>                       classify (A, B) against ker(theta)
  factorize [<A> <B>]                  recover (A, B) from theta_{A,B} (const ring)
  escape-search <algebra>              search for non-V-stable automorphisms
  demo k2-phi                          the escaping involution of k2-alt

options:
  --ring <const|laurent|puiseux:D|trunc:N>   coefficient ring (default const)
  --seed <n>      seed for sampled inputs (default 0)
  --max-n <n>     product index bound for check (default 6)
  --dmax <n>      d-power bound (default 2 for check, 1 for escape-search)
  --ascii         render the tensor symbol as (x)

<algebra> is a built-in name (n4, cur-sl2, k1, k2, k3, k2-alt) or a path to
an algebra file. Matrices are written [[a, b], [c, d]] with ring element
entries.
";

struct Opts {
    positional: Vec<String>,
    ring: RingSpec,
    seed: u64,
    max_n: u32,
    dmax: Option<u32>,
    ascii: bool,
}

fn parse_opts(args: &[String]) -> Result<Opts, ConfError> {
    let mut opts = Opts {
        positional: Vec::new(),
        ring: RingSpec::Const,
        seed: 0,
        max_n: 6,
        dmax: None,
        ascii: false,
    };
    let mut it = args.iter();
    while let Some(a) = it.next() {
        match a.as_str() {
            "--ascii" => opts.ascii = true,
            "--ring" | "--seed" | "--max-n" | "--dmax" => {
                let v = it
                    .next()
                    .ok_or_else(|| ConfError::Usage(format!("{} needs a value", a)))?;
                match a.as_str() {
                    "--ring" => opts.ring = parse_ring_spec(v)?,
                    "--seed" => {
                        opts.seed = v
                            .parse()
                            .map_err(|_| ConfError::Usage("bad --seed value".into()))?
                    }
                    "--max-n" => {
                        opts.max_n = v
                            .parse()
                            .map_err(|_| ConfError::Usage("bad --max-n value".into()))?
                    }
                    _ => {
                        opts.dmax = Some(
                            v.parse()
                                .map_err(|_| ConfError::Usage("bad --dmax value".into()))?,
                        )
                    }
                }
            }
            other if other.starts_with("--") => {
                return Err(ConfError::Usage(format!("unknown option {}", other)));
            }
            other => opts.positional.push(other.to_string()),
        }
    }
    Ok(opts)
}

/// A built-in table by name, or a parsed algebra file by path.
fn load_algebra(name: &str) -> Result<StructureTable, ConfError> {
    if let Some(t) = builtin(name) {
        return Ok(t);
    }
    match std::fs::read_to_string(name) {
        Ok(text) => parse_algebra(&text),
        Err(_) => Err(ConfError::Usage(format!(
            "unknown algebra `{}` (built-ins: {})",
            name,
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

/// Parse a theta parameter pair from two matrix literals, or sample one
/// when none are given.
fn pair_from_opts(opts: &Opts, require_args: bool) -> Result<(Sl2Pair, bool), ConfError> {
    match opts.positional.len() {
        3 => {
            let a = parse_mat2(opts.ring, &opts.positional[1])?;
            let b = parse_mat2(opts.ring, &opts.positional[2])?;
            Ok((Sl2Pair::new(a, b)?, false))
        }
        1 if !require_args => {
            let mut s = Sampler::from_seed(opts.seed);
            Ok((s.sl2_pair(opts.ring, 3), true))
        }
        _ => Err(ConfError::Usage(
            "expected two matrix arguments [[a, b], [c, d]]".to_string(),
        )),
    }
}

fn render_images(out: &mut String, label: &str, phi: &ConfMorphism, ascii: bool) {
    for g in 0..phi.basis().len() {
        let _ = writeln!(
            out,
            "{}({}) = {}",
            label,
            phi.basis().name(g),
            render_conf_element(phi.basis(), phi.image(g), ascii)
        );
    }
}

fn cmd_check(opts: &Opts) -> Result<(String, i32), ConfError> {
    let name = opts
        .positional
        .get(1)
        .ok_or_else(|| ConfError::Usage("check needs an algebra".into()))?;
    let table = load_algebra(name)?;
    let dmax = opts.dmax.unwrap_or(2);
    let report = check_axioms(&table, opts.max_n, 4, dmax)?;
    let mut out = format!(
        "algebra {}: {} generators, support bound {}\n",
        table.name(),
        table.basis().len(),
        report.support_bound
    );
    let _ = write!(out, "{}", report);
    if report.passed() {
        out.push_str("result: all axioms hold\n");
        Ok((out, 0))
    } else {
        out.push_str("result: FAILED\n");
        Ok((out, 1))
    }
}

fn cmd_bracket(opts: &Opts) -> Result<(String, i32), ConfError> {
    if opts.positional.len() != 4 {
        return Err(ConfError::Usage(
            "bracket needs an algebra and two elements".into(),
        ));
    }
    let table = load_algebra(&opts.positional[1])?;
    let a = parse_conf_element(table.basis(), opts.ring, &opts.positional[2])?;
    let b = parse_conf_element(table.basis(), opts.ring, &opts.positional[3])?;
    let br = lambda_bracket(&table, &a, &b)?;
    Ok((format!("{}\n", render_lambda_poly(table.basis(), &br, opts.ascii)), 0))
}

fn cmd_theta(opts: &Opts) -> Result<(String, i32), ConfError> {
    let (pair, sampled) = pair_from_opts(opts, false)?;
    let mut out = String::new();
    if sampled {
        let _ = writeln!(out, "sampled pair (seed {})", opts.seed);
    }
    let _ = writeln!(out, "A = {}", pair.a);
    let _ = writeln!(out, "B = {}", pair.b);
    let phi = theta(&pair)?;
    render_images(&mut out, "theta", &phi, opts.ascii);
    Ok((out, 0))
}

fn cmd_verify_theta(opts: &Opts) -> Result<(String, i32), ConfError> {
    let (pair, sampled) = pair_from_opts(opts, false)?;
    let mut out = String::new();
    if sampled {
        let _ = writeln!(out, "sampled pair (seed {})", opts.seed);
    }
    let _ = writeln!(out, "A = {}", pair.a);
    let _ = writeln!(out, "B = {}", pair.b);
    let phi = theta(&pair)?;
    let table = crate::builders::build_n4();
    let verdict = is_conf_automorphism(&table, &phi)?;
    let _ = writeln!(out, "V-stable: {}", phi.is_v_stable());
    let _ = writeln!(out, "verdict: {}", verdict);
    let code = if verdict == AutoVerdict::Automorphism { 0 } else { 1 };
    Ok((out, code))
}

fn cmd_kernel(opts: &Opts) -> Result<(String, i32), ConfError> {
    let (pair, _) = pair_from_opts(opts, true)?;
    match kernel_witness(&pair)? {
        KernelVerdict::InKernel { a } => {
            Ok((format!("in kernel: theta_{{A,B}} = id with A = B = aI, a = {}\n", a), 0))
        }
        KernelVerdict::NotInKernel { witness } => {
            let table = crate::builders::n4_basis();
            Ok((
                format!("not in kernel: theta moves generator {}\n", table.name(witness)),
                1,
            ))
        }
    }
}

fn cmd_factorize(opts: &Opts) -> Result<(String, i32), ConfError> {
    if opts.ring != RingSpec::Const {
        return Err(ConfError::Usage(
            "factorize works over the constants ring".into(),
        ));
    }
    let (pair, sampled) = pair_from_opts(opts, false)?;
    let mut out = String::new();
    if sampled {
        let _ = writeln!(out, "sampled pair (seed {})", opts.seed);
    }
    let _ = writeln!(out, "input A = {}", pair.a);
    let _ = writeln!(out, "input B = {}", pair.b);
    let phi = theta(&pair)?;
    let table = crate::builders::build_n4();
    match factorize(&table, &phi)? {
        Factorization::Pair(rec) => {
            let _ = writeln!(out, "recovered A = {}", rec.a);
            let _ = writeln!(out, "recovered B = {}", rec.b);
            let round = theta(&rec)?.images() == phi.images();
            let _ = writeln!(out, "round trip theta(recovered) = theta(input): {}", round);
            Ok((out, if round { 0 } else { 1 }))
        }
        Factorization::ExtensionRequired { needed } => {
            let _ = writeln!(
                out,
                "extension required: no square root of {} in Q(i)",
                needed
            );
            Ok((out, 1))
        }
    }
}

fn cmd_escape_search(opts: &Opts) -> Result<(String, i32), ConfError> {
    let name = opts
        .positional
        .get(1)
        .ok_or_else(|| ConfError::Usage("escape-search needs an algebra".into()))?;
    let table = load_algebra(name)?;
    let dmax = opts.dmax.unwrap_or(1);
    let mut out = format!(
        "escape search: {} over {}, d-power <= {}\n",
        table.name(),
        opts.ring,
        dmax
    );
    match bounded_escape_search(&table, opts.ring, dmax)? {
        None => {
            out.push_str("no non-V-stable automorphism found\n");
            Ok((out, 0))
        }
        Some(phi) => {
            out.push_str("witness found:\n");
            render_images(&mut out, "phi", &phi, opts.ascii);
            Ok((out, 0))
        }
    }
}

fn cmd_demo(opts: &Opts) -> Result<(String, i32), ConfError> {
    match opts.positional.get(1).map(|s| s.as_str()) {
        Some("k2-phi") => {}
        _ => return Err(ConfError::Usage("available demo: k2-phi".into())),
    }
    let table = crate::builders::build_k2_alt();
    let phi = k2_phi(table.basis(), RingSpec::Const)?;
    let mut out = format!("algebra {} over {}\n", table.name(), RingSpec::Const);
    render_images(&mut out, "phi", &phi, opts.ascii);
    let involution = phi.compose(&phi)?.is_identity();
    let verdict = is_conf_automorphism(&table, &phi)?;
    let _ = writeln!(out, "phi^2 = id: {}", involution);
    let _ = writeln!(out, "V-stable: {}", phi.is_v_stable());
    let _ = writeln!(out, "verdict: {}", verdict);
    let ok = involution && !phi.is_v_stable() && verdict == AutoVerdict::Automorphism;
    Ok((out, if ok { 0 } else { 1 }))
}

/// Run the CLI. Returns the full output text and the process exit code.
pub fn run(args: &[String]) -> (String, i32) {
    let opts = match parse_opts(args) {
        Ok(o) => o,
        Err(e) => return (format!("error: {}\nuse `confalg help` for usage\n", e), 2),
    };
    let cmd = match opts.positional.first().map(|s| s.as_str()) {
        Some(c) => c,
        None => return (USAGE.to_string(), 2),
    };
    let result = match cmd {
        "help" | "--help" => return (USAGE.to_string(), 0),
        "check" => cmd_check(&opts),
        "bracket" => cmd_bracket(&opts),
        "theta" => cmd_theta(&opts),
        "verify-theta" => cmd_verify_theta(&opts),
        "kernel" => cmd_kernel(&opts),
        "factorize" => cmd_factorize(&opts),
        "escape-search" => cmd_escape_search(&opts),
        "demo" => cmd_demo(&opts),
        other => Err(ConfError::Usage(format!("unknown command `{}`", other))),
    };
    match result {
        Ok(pair) => pair,
        Err(e) => {
            let code = match e {
                ConfError::Usage(_) | ConfError::Parse { .. } => 2,
                _ => 1,
            };
            (format!("error: {}\n", e), code)
        }
    }
}
