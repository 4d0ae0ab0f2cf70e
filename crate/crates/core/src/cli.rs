//! JSON documents and the `hermgrs` command line.
//!
//! Every element is written as its integer index in the canonical encoding of
//! the tower, so documents are exact and diff-friendly. Exit codes: 0 success,
//! 1 verification failure, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::{construction1, construction2, theorem7_check, FamilyKind, FamilySpec};
use crate::error::Error;
use crate::gf::{Elt, FieldTower};
use crate::grs::{Certificate, GrsCode, Witness};
use crate::limits::Limits;
use crate::search::classify;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WitnessDoc {
    Lambda { value: Elt },
    Polynomial { coeffs: Vec<Elt> },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub witness: WitnessDoc,
    pub gram_zero: bool,
    pub theorem7_ok: bool,
    pub min_distance: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    pub params: BTreeMap<String, u64>,
}

/// A code together with its self-duality certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub schema_version: u32,
    pub p: u64,
    pub m: u32,
    pub base_modulus: Vec<u32>,
    pub top_modulus: Vec<u32>,
    pub n: usize,
    pub k: usize,
    pub alpha: Vec<Elt>,
    pub v: Vec<Elt>,
    pub u: Vec<Elt>,
    pub certificate: CertificateDoc,
    pub provenance: Provenance,
}

impl CodeDocument {
    pub fn new(code: &GrsCode<'_>, cert: &Certificate, provenance: Provenance) -> Self {
        let gf = code.tower();
        let witness = match &cert.witness {
            Witness::Lambda(l) => WitnessDoc::Lambda { value: *l },
            Witness::Polynomial(g) => WitnessDoc::Polynomial { coeffs: g.coeffs().to_vec() },
        };
        CodeDocument {
            schema_version: SCHEMA_VERSION,
            p: gf.p() as u64,
            m: gf.m(),
            base_modulus: gf.base_modulus().to_vec(),
            top_modulus: gf.top_modulus().to_vec(),
            n: code.n(),
            k: code.k(),
            alpha: code.alpha().to_vec(),
            v: code.v().to_vec(),
            u: cert.u.clone(),
            certificate: CertificateDoc {
                witness,
                gram_zero: cert.gram_zero,
                theorem7_ok: cert.theorem7_ok,
                min_distance: cert.min_distance,
            },
            provenance,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Rebuilds the tower and checks the stored moduli against it.
    pub fn tower(&self) -> Result<FieldTower, String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema_version {}", self.schema_version));
        }
        let gf = FieldTower::new(self.p, self.m).map_err(|e| e.to_string())?;
        if gf.base_modulus() != self.base_modulus.as_slice()
            || gf.top_modulus().as_slice() != self.top_modulus.as_slice()
        {
            return Err("field moduli differ from the canonical tower".into());
        }
        Ok(gf)
    }

    pub fn code<'a>(&self, gf: &'a FieldTower) -> Result<GrsCode<'a>, String> {
        if self.alpha.len() != self.n {
            return Err(format!("n = {} but alpha has {} entries", self.n, self.alpha.len()));
        }
        GrsCode::new(gf, self.k, self.alpha.clone(), self.v.clone()).map_err(|e| e.to_string())
    }
}

/// Outcome of checking a document; `failures` is empty when it verifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub self_dual: bool,
    pub theorem7: Option<bool>,
    pub min_distance: Option<usize>,
    pub failures: Vec<String>,
}

/// Recomputes every claim in the document.
pub fn verify_document(doc: &CodeDocument, limits: &Limits) -> VerifyReport {
    let mut failures = Vec::new();
    let gf = match doc.tower() {
        Ok(gf) => gf,
        Err(e) => return VerifyReport { self_dual: false, theorem7: None, min_distance: None, failures: vec![e] },
    };
    let code = match doc.code(&gf) {
        Ok(c) => c,
        Err(e) => return VerifyReport { self_dual: false, theorem7: None, min_distance: None, failures: vec![e] },
    };
    if code.n() != 2 * code.k() {
        failures.push(format!("n = {} is not 2k = {}", code.n(), 2 * code.k()));
    }
    let gram = code.hermitian_gram();
    if let Some((i, j)) = gram.first_nonzero() {
        failures.push(format!("gram nonzero at ({i},{j})"));
    }
    let self_dual = code.is_hermitian_self_dual();
    let u = code.u_vector();
    if u != doc.u {
        let i = u.iter().zip(&doc.u).position(|(a, b)| a != b).unwrap_or(u.len().min(doc.u.len()));
        failures.push(format!("u mismatch at index {i}"));
    }
    let witness_elts: &[Elt] = match &doc.certificate.witness {
        WitnessDoc::Lambda { value } => std::slice::from_ref(value),
        WitnessDoc::Polynomial { coeffs } => coeffs,
        WitnessDoc::None => &[],
    };
    if let Some(bad) = witness_elts.iter().find(|e| e.index() >= gf.order()) {
        failures.push(format!("witness element {bad} is outside F_{}", gf.order()));
        return VerifyReport { self_dual, theorem7: None, min_distance: None, failures };
    }
    let norms: Vec<Elt> = code.v().iter().map(|&v| gf.norm(v)).collect();
    match &doc.certificate.witness {
        WitnessDoc::Lambda { value } => {
            if let Some(i) = (0..code.n()).find(|&i| norms[i] != gf.mul(*value, u[i])) {
                failures.push(format!("v_{i}^(q+1) != lambda*u_{i}"));
            }
        }
        WitnessDoc::Polynomial { coeffs } => {
            let g = crate::poly::Poly::from_coeffs(coeffs.clone());
            if let Some(i) = (0..code.n()).find(|&i| norms[i] != gf.mul(g.eval(&gf, code.alpha()[i]), u[i])) {
                failures.push(format!("v_{i}^(q+1) != g(alpha_{i})*u_{i}"));
            }
        }
        WitnessDoc::None => {}
    }
    if doc.certificate.gram_zero != gram.is_zero() {
        failures.push("certificate gram_zero flag is wrong".into());
    }
    let theorem7 = theorem7_check(&code).ok();
    if let Some(t7) = theorem7 {
        if t7 != self_dual {
            failures.push("degree criterion disagrees with the gram matrix".into());
        }
        if t7 != doc.certificate.theorem7_ok {
            failures.push("certificate theorem7_ok flag is wrong".into());
        }
    }
    let mut min_distance = None;
    if let Some(claimed) = doc.certificate.min_distance {
        match code.min_distance_bruteforce(limits.max_codewords) {
            Ok(d) => {
                min_distance = Some(d);
                if d != claimed {
                    failures.push(format!("claimed minimum distance {claimed}, found {d}"));
                }
            }
            Err(e) => failures.push(format!("cannot check minimum distance: {e}")),
        }
    }
    VerifyReport { self_dual, theorem7, min_distance, failures }
}

#[derive(Debug, Parser)]
#[command(name = "hermgrs", version, about = "Hermitian self-dual GRS codes over F_{q^2}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree, q = p^m.
    #[arg(long)]
    m: u32,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct CodeSource {
    /// CodeDocument JSON file.
    #[arg(long = "in", conflicts_with_all = ["p", "m", "k", "alpha", "v"])]
    input: Option<PathBuf>,
    #[arg(long, requires_all = ["m", "k", "alpha", "v"])]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    v: Option<Vec<u64>>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical field tower.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Roots of x^q = a x + b.
    S1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Roots of (x + a)^(q+1) = b.
    S2 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Self-dual code on points of a line family.
    Construct1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, requires = "b")]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
        /// Evaluation points; defaults to n points of the family.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "seed"])]
        alpha: Option<Vec<u64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: Option<u64>,
        /// Pick a random n-subset of the family instead of the first n points.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Self-dual code on points of a norm circle.
    Construct2 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "seed"])]
        alpha: Option<Vec<u64>>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recheck every claim of a CodeDocument.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum distance by codeword enumeration.
    Mindist {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Degree criterion for self-duality, compared with the Gram matrix.
    Theorem7 {
        #[command(flatten)]
        source: CodeSource,
    },
    /// Exhaustive classification of admissible n-subsets.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// One construction per valid family and even length.
    ExportTable {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        max_n: Option<usize>,
        /// Also enumerate codewords for the minimum distance when within the cap.
        #[arg(long)]
        mindist: bool,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn verify(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VERIFY, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPrime(_)
            | Error::InvalidDegree
            | Error::TooLarge { .. }
            | Error::InvalidElement { .. }
            | Error::LengthMismatch { .. }
            | Error::NotEven(_)
            | Error::TooLargeToEnumerate { .. }
            | Error::KernelTooLarge { .. }
            | Error::TooManySubsets { .. } => EXIT_USAGE,
            _ => EXIT_VERIFY,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`dispatch`], writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let limits = Limits::from_env();
    match execute(cli.command, &limits, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn tower(p: u64, m: u32) -> Result<FieldTower, Failure> {
    FieldTower::new(p, m).map_err(Failure::from)
}

fn elt(gf: &FieldTower, i: u64) -> Result<Elt, Failure> {
    gf.elt(i).map_err(Failure::from)
}

fn elts(gf: &FieldTower, xs: &[u64]) -> Result<Vec<Elt>, Failure> {
    xs.iter().map(|&i| elt(gf, i)).collect()
}

fn emit(out: &mut dyn Write, s: &str) -> Result<(), Failure> {
    out.write_all(s.as_bytes()).map_err(|e| Failure::verify(format!("write failed: {e}")))
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn join(xs: &[Elt]) -> String {
    xs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// `n` points of `roots`: the first `n`, or a seeded random subset (ascending).
fn choose_points(roots: &[Elt], n: usize, seed: Option<u64>) -> Result<Vec<Elt>, Failure> {
    if n > roots.len() {
        return Err(Failure::usage(format!("--n {n} exceeds the {} points of the family", roots.len())));
    }
    Ok(match seed {
        None => roots[..n].to_vec(),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut idx = sample(&mut rng, roots.len(), n).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| roots[i]).collect()
        }
    })
}

fn certify_distance(code: &GrsCode<'_>, cert: &mut Certificate, limits: &Limits) -> Result<(), Failure> {
    match code.min_distance_bruteforce(limits.max_codewords) {
        Ok(d) => {
            if d != code.n() - code.k() + 1 {
                return Err(Failure::verify(format!("minimum distance {d} is not n-k+1")));
            }
            cert.min_distance = Some(d);
            Ok(())
        }
        Err(Error::TooLargeToEnumerate { .. }) => Ok(()),
        Err(e) => Err(e.into()),
    }
}

fn print_document(out: &mut dyn Write, doc: &CodeDocument, json: bool) -> Result<(), Failure> {
    if json {
        return emit(out, &doc.to_json());
    }
    let mut s = String::new();
    s += &format!(
        "[{},{}] Hermitian self-dual GRS code over F_{} (p={}, m={}) via {}\n",
        doc.n,
        doc.k,
        (doc.p as u128).pow(2 * doc.m),
        doc.p,
        doc.m,
        doc.provenance.construction
    );
    s += &format!("{:>4}  {:>6}  {:>6}  {:>6}\n", "i", "alpha", "v", "u");
    for i in 0..doc.n {
        s += &format!("{:>4}  {:>6}  {:>6}  {:>6}\n", i, doc.alpha[i], doc.v[i], doc.u[i]);
    }
    let witness = match &doc.certificate.witness {
        WitnessDoc::Lambda { value } => format!("lambda = {value}"),
        WitnessDoc::Polynomial { coeffs } => format!("g coefficients = [{}]", join(coeffs)),
        WitnessDoc::None => "none".into(),
    };
    s += &format!("witness: {witness}\n");
    s += &format!(
        "gram zero: {}  degree criterion: {}  min distance: {}\n",
        doc.certificate.gram_zero,
        doc.certificate.theorem7_ok,
        doc.certificate.min_distance.map_or("not enumerated".into(), |d| d.to_string())
    );
    emit(out, &s)
}

fn load_source<'a>(
    src: &CodeSource,
    holder: &'a mut Option<FieldTower>,
) -> Result<(GrsCode<'a>, Option<CodeDocument>), Failure> {
    if let Some(path) = &src.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let doc = CodeDocument::from_json(&text).map_err(|e| Failure::usage(format!("malformed document: {e}")))?;
        let gf = holder.insert(doc.tower().map_err(Failure::verify)?);
        let code = doc.code(gf).map_err(Failure::verify)?;
        return Ok((code, Some(doc)));
    }
    let (Some(p), Some(m), Some(k), Some(alpha), Some(v)) = (src.p, src.m, src.k, &src.alpha, &src.v) else {
        return Err(Failure::usage("give either --in FILE or all of --p --m --k --alpha --v"));
    };
    let gf = holder.insert(tower(p, m)?);
    let alpha = elts(gf, alpha)?;
    let v = elts(gf, v)?;
    Ok((GrsCode::new(gf, k, alpha, v)?, None))
}

fn execute(cmd: Command, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::FieldInfo { field } => {
            let gf = tower(field.p, field.m)?;
            #[derive(Serialize)]
            struct Info<'a> {
                p: u32,
                m: u32,
                q: u32,
                order: u32,
                base_modulus: &'a [u32],
                top_modulus: [u32; 3],
                generator: Elt,
                theta: Elt,
            }
            let info = Info {
                p: gf.p(),
                m: gf.m(),
                q: gf.q(),
                order: gf.order(),
                base_modulus: gf.base_modulus(),
                top_modulus: gf.top_modulus(),
                generator: gf.generator(),
                theta: gf.theta(),
            };
            if field.json {
                emit(out, &json_line(&info))?;
            } else {
                let [c, b, _] = info.top_modulus;
                emit(
                    out,
                    &format!(
                        "F_{} over F_{} over F_{}\nbase modulus (low to high): {:?}\ntop modulus: y^2 + {}*y + {}\ntheta: {}\ngenerator: {}\n",
                        info.order, info.q, info.p, info.base_modulus, b, c, info.theta, info.generator
                    ),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::S1 { field, a, b } => family_command(FamilyKind::Line, field, a, b, out),
        Command::S2 { field, a, b } => family_command(FamilyKind::Norm, field, a, b, out),
        Command::Construct1 { field, a, b, alpha, n, lambda, seed } => {
            let gf = tower(field.p, field.m)?;
            let family = match (a, b) {
                (Some(a), Some(b)) => Some(FamilySpec::line(elt(&gf, a)?, elt(&gf, b)?)),
                _ => None,
            };
            let points = match (&alpha, family, n) {
                (Some(al), _, _) => elts(&gf, al)?,
                (None, Some(f), Some(n)) => choose_points(&f.root_set(&gf), n, seed)?,
                _ => return Err(Failure::usage("give --alpha, or --a --b with --n")),
            };
            let lambda = lambda.map(|l| elt(&gf, l)).transpose()?;
            let (code, mut cert) = construction1(&gf, &points, family, lambda)?;
            certify_distance(&code, &mut cert, limits)?;
            let mut params = BTreeMap::new();
            if let Some(f) = family {
                params.insert("a".into(), f.a.index() as u64);
                params.insert("b".into(), f.b.index() as u64);
            }
            if let Some(s) = seed {
                params.insert("seed".into(), s);
            }
            let doc = CodeDocument::new(&code, &cert, Provenance { construction: "construction1".into(), params });
            print_document(out, &doc, field.json)?;
            Ok(EXIT_OK)
        }
        Command::Construct2 { field, a, b, alpha, n, seed } => {
            let gf = tower(field.p, field.m)?;
            let (ae, be) = (elt(&gf, a)?, elt(&gf, b)?);
            let points = match (&alpha, n) {
                (Some(al), _) => elts(&gf, al)?,
                (None, Some(n)) => choose_points(&FamilySpec::norm(ae, be).root_set(&gf), n, seed)?,
                _ => return Err(Failure::usage("give --alpha or --n")),
            };
            let (code, mut cert) = construction2(&gf, ae, be, &points)?;
            certify_distance(&code, &mut cert, limits)?;
            let mut params = BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]);
            if let Some(s) = seed {
                params.insert("seed".into(), s);
            }
            let doc = CodeDocument::new(&code, &cert, Provenance { construction: "construction2".into(), params });
            print_document(out, &doc, field.json)?;
            Ok(EXIT_OK)
        }
        Command::Verify { input, json } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", input.display())))?;
            let doc = CodeDocument::from_json(&text).map_err(|e| Failure::usage(format!("malformed document: {e}")))?;
            let report = verify_document(&doc, limits);
            if json {
                emit(out, &json_line(&report))?;
            } else {
                let verdict = if report.failures.is_empty() { "VERIFIED" } else { "FAILED" };
                emit(out, &format!("{verdict}: [{},{}] code, self-dual = {}\n", doc.n, doc.k, report.self_dual))?;
            }
            for f in &report.failures {
                let _ = writeln!(err, "{f}");
            }
            Ok(if report.failures.is_empty() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Mindist { source } => {
            let mut holder = None;
            let (code, _) = load_source(&source, &mut holder)?;
            let d = code.min_distance_bruteforce(limits.max_codewords)?;
            let singleton = code.n() - code.k() + 1;
            if source.json {
                #[derive(Serialize)]
                struct Out {
                    n: usize,
                    k: usize,
                    min_distance: usize,
                    mds: bool,
                }
                emit(out, &json_line(&Out { n: code.n(), k: code.k(), min_distance: d, mds: d == singleton }))?;
            } else {
                emit(out, &format!("[{},{},{}] code, MDS = {}\n", code.n(), code.k(), d, d == singleton))?;
            }
            Ok(if d == singleton { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Theorem7 { source } => {
            let mut holder = None;
            let (code, _) = load_source(&source, &mut holder)?;
            let criterion = theorem7_check(&code)?;
            let gram = code.is_hermitian_self_dual();
            if source.json {
                #[derive(Serialize)]
                struct Out {
                    degree_criterion: bool,
                    gram_zero: bool,
                    agree: bool,
                }
                emit(out, &json_line(&Out { degree_criterion: criterion, gram_zero: gram, agree: criterion == gram }))?;
            } else {
                emit(out, &format!("degree criterion: {criterion}  gram zero: {gram}\n"))?;
            }
            if criterion != gram {
                let _ = writeln!(err, "degree criterion disagrees with the gram matrix");
            }
            Ok(if criterion && gram { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Classify { field, n, jobs } => {
            let gf = tower(field.p, field.m)?;
            let report = classify(&gf, n, limits, jobs)?;
            if field.json {
                emit(out, &json_line(&report))?;
            } else {
                let mut s = format!(
                    "q={} n={}: {} subsets, {} admissible (line {}, norm {}, none {}), {} unrealized family subsets, {} violations\n",
                    report.q,
                    report.n,
                    report.total,
                    report.admissible.len(),
                    report.counts.line,
                    report.counts.norm,
                    report.counts.none,
                    report.unrealized.len(),
                    report.violations.len()
                );
                for a in &report.admissible {
                    let fams: Vec<String> =
                        a.families.iter().map(|f| format!("{:?}(a={},b={})", f.kind, f.a, f.b)).collect();
                    s += &format!("  {{{}}}  x=({})  {}\n", join(&a.alpha), join(&a.witness), fams.join(" "));
                }
                emit(out, &s)?;
            }
            for v in &report.violations {
                let _ = writeln!(err, "violation {:?} at {{{}}}", v.kind, join(&v.alpha));
            }
            Ok(if report.is_clean() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::ExportTable { field, max_n, mindist } => {
            let gf = tower(field.p, field.m)?;
            let rows = export_table(&gf, max_n, mindist, limits);
            if field.json {
                #[derive(Serialize)]
                struct Table<'a> {
                    p: u32,
                    m: u32,
                    q: u32,
                    rows: &'a [TableRow],
                }
                emit(out, &json_line(&Table { p: gf.p(), m: gf.m(), q: gf.q(), rows: &rows }))?;
            } else {
                let mut s = format!("{:<5} {:>5} {:>5} {:>3} {:>3}  {:<8} outcome\n", "kind", "a", "b", "n", "k", "d");
                for r in &rows {
                    let d = r.code.as_ref().and_then(|c| c.certificate.min_distance);
                    s += &format!(
                        "{:<5} {:>5} {:>5} {:>3} {:>3}  {:<8} {}\n",
                        format!("{:?}", r.family.kind).to_lowercase(),
                        r.family.a,
                        r.family.b,
                        r.n,
                        r.n / 2,
                        d.map_or("-".into(), |d| d.to_string()),
                        r.outcome
                    );
                }
                emit(out, &s)?;
            }
            Ok(if rows.iter().any(|r| r.outcome.starts_with("verification failed")) { EXIT_VERIFY } else { EXIT_OK })
        }
    }
}

fn family_command(kind: FamilyKind, field: FieldArgs, a: u64, b: u64, out: &mut dyn Write) -> CmdResult {
    let gf = tower(field.p, field.m)?;
    let spec = FamilySpec { kind, a: elt(&gf, a)?, b: elt(&gf, b)? };
    let roots = spec.root_set(&gf);
    let valid = spec.is_valid(&gf);
    if field.json {
        #[derive(Serialize)]
        struct Out<'a> {
            family: FamilySpec,
            valid: bool,
            roots: &'a [Elt],
        }
        emit(out, &json_line(&Out { family: spec, valid, roots: &roots }))?;
    } else {
        emit(out, &format!("{} roots (valid family: {}): {{{}}}\n", roots.len(), valid, join(&roots)))?;
    }
    Ok(EXIT_OK)
}

/// One row of an exported code table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: FamilySpec,
    pub n: usize,
    pub outcome: String,
    pub code: Option<CodeDocument>,
}

/// For every valid family and every even `n` up to its size (and `max_n`),
/// the construction on the first `n` points of the family.
pub fn export_table(gf: &FieldTower, max_n: Option<usize>, mindist: bool, limits: &Limits) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for kind in [FamilyKind::Line, FamilyKind::Norm] {
        for family in FamilySpec::all_valid(gf, kind) {
            let roots = family.root_set(gf);
            let top = max_n.map_or(roots.len(), |m| m.min(roots.len()));
            for n in (2..=top).step_by(2) {
                let points = &roots[..n];
                let built = match kind {
                    FamilyKind::Line => construction1(gf, points, Some(family), None),
                    FamilyKind::Norm => construction2(gf, family.a, family.b, points),
                };
                let (outcome, code) = match built {
                    Ok((code, mut cert)) => {
                        if mindist {
                            cert.min_distance = code.min_distance_bruteforce(limits.max_codewords).ok();
                        }
                        let construction = match kind {
                            FamilyKind::Line => "construction1",
                            FamilyKind::Norm => "construction2",
                        };
                        let params = BTreeMap::from([
                            ("a".to_string(), family.a.index() as u64),
                            ("b".to_string(), family.b.index() as u64),
                        ]);
                        let doc =
                            CodeDocument::new(&code, &cert, Provenance { construction: construction.into(), params });
                        ("ok".to_string(), Some(doc))
                    }
                    Err(e) => (e.to_string(), None),
                };
                rows.push(TableRow { family, n, outcome, code });
            }
        }
    }
    rows
}
