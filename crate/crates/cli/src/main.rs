mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schubert_a2::alcove::AffineElement;
use schubert_a2::bruhat::{leq, leq_oracle, Hexagon};
use schubert_a2::kumar::{kumar_singular_set, kumar_smooth, multiplicity, smooth_target, RationalNF};
use schubert_a2::loci::{
    classify_schubert, enumerate_smooth_varieties, maximal_singular, singular_codim, smooth_points, Classification,
    SmoothClass,
};
use schubert_a2::qstat::{base_case, maximal_nrs, maximal_nrs_generic, nrs_codimension, nrs_set, q_brute, q_structured, QTable};
use schubert_a2::verify::{run_suite, Bounds, CheckResult, Suite};
use serde::Serialize;

use render::{Labels, Layer, Palette, Payload, RenderError, RenderSpec, Viewport};

/// Largest length for which `smooth` also runs the Kumar scan.
const KUMAR_CAP: usize = 10;

#[derive(Parser)]
#[command(name = "schubert-a2", version, about = "Schubert varieties in affine type A2")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bruhat comparison x <= w, fast and by subexpressions.
    Order { x: String, w: String },
    /// The hexagon of a non-spiral element.
    Hexagon { w: String },
    /// q statistic for one x, or the table over the whole interval.
    Q { w: String, x: Option<String> },
    /// Non-rationally-smooth points.
    Nrs { w: String },
    /// Smooth points and maximal singular points.
    Smooth { w: String },
    /// Smooth, rationally smooth only, or singular.
    Classify { w: String },
    /// Equivariant multiplicity and Kumar's smoothness verdict.
    Mult { w: String, x: String },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Table of smooth Schubert varieties.
    EnumerateSmooth,
    /// Draw an SVG diagram.
    Render {
        w: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "lattice,hexagon")]
        layers: Vec<Layer>,
        #[arg(long, value_enum, default_value_t = Labels::None)]
        labels: Labels,
        /// xmin,ymin,xmax,ymax in alcove edges; defaults to the hull plus a margin.
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<Viewport>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hexagon,
    Q,
    Lookup,
    Kumar,
    Loci,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Hexagon => Suite::Hexagon,
            SuiteArg::Q => Suite::Q,
            SuiteArg::Lookup => Suite::Lookup,
            SuiteArg::Kumar => Suite::Kumar,
            SuiteArg::Loci => Suite::Loci,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    Parse(String),
    Precondition(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Precondition(m) | Failure::Verification(m) | Failure::Io(m) => m,
        }
    }
}

impl From<schubert_a2::Error> for Failure {
    fn from(e: schubert_a2::Error) -> Failure {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

impl From<RenderError> for Failure {
    fn from(e: RenderError) -> Failure {
        match e {
            RenderError::Config(_) => Failure::Parse(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn element(s: &str) -> Result<AffineElement, Failure> {
    Ok(AffineElement::parse(s)?)
}

fn below(x: &AffineElement, w: &AffineElement) -> Outcome {
    if leq(x, w) {
        Ok(())
    } else {
        Err(schubert_a2::Error::NotBelow { x: x.to_string(), w: w.to_string() }.into())
    }
}

fn words(xs: &[AffineElement]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or("-".into(), |v| v.to_string())
}

struct Out {
    json: bool,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
        } else {
            print!("{}", text());
        }
    }
}

fn agreement(agree: bool, what: &str) -> Outcome {
    if agree {
        Ok(())
    } else {
        Err(Failure::Verification(format!("fast path and oracle disagree on {what}")))
    }
}

fn order(out: &Out, x: &str, w: &str) -> Outcome {
    let (x, w) = (element(x)?, element(w)?);
    let (fast, oracle) = (leq(&x, &w), leq_oracle(&x, &w));
    #[derive(Serialize)]
    struct Order {
        x: AffineElement,
        w: AffineElement,
        fast: bool,
        oracle: bool,
        agree: bool,
    }
    let row = Order { x, w, fast, oracle, agree: fast == oracle };
    out.emit(&row, || {
        let tail = if row.agree { "" } else { " disagree" };
        format!("{fast} {oracle}{tail}\n")
    });
    agreement(row.agree, "order")
}

fn hexagon(out: &Out, w: &str) -> Outcome {
    let w = element(w)?;
    let hex = Hexagon::new(&w)?;
    out.emit(&hex, || {
        let mut s = format!("owner {w}\nchamber {}\n", hex.chamber);
        for r in &hex.hyperplanes {
            s += &format!("hyperplane {r}\n");
        }
        for (i, v) in hex.vertices.iter().enumerate() {
            s += &format!("w{i} {v} edge {}\n", hex.edge(i).len());
        }
        s
    });
    Ok(())
}

fn q(out: &Out, w: &str, x: Option<&str>) -> Outcome {
    let w = element(w)?;
    if let Some(x) = x {
        let x = element(x)?;
        below(&x, &w)?;
        let oracle = q_brute(&w, &x)?;
        let fast = if w.is_spiral() { None } else { Some(q_structured(&w, &x)?) };
        let agree = fast.is_none_or(|f| f == oracle);
        #[derive(Serialize)]
        struct Single {
            w: AffineElement,
            x: AffineElement,
            fast: Option<u32>,
            oracle: u32,
            agree: bool,
        }
        out.emit(&Single { w, x, fast, oracle, agree }, || format!("{} {oracle}\n", opt(fast)));
        return agreement(agree, "q");
    }
    let table = QTable::best(&w);
    let brute = QTable::brute(&w).as_map();
    let agree = table.entries.iter().all(|e| brute[&e.x] == e.q);
    #[derive(Serialize)]
    struct Table<'a> {
        #[serde(flatten)]
        table: &'a QTable,
        agree: bool,
    }
    out.emit(&Table { table: &table, agree }, || {
        let mut s = String::new();
        for e in &table.entries {
            let tag = serde_json::to_value(e.tag).expect("tag");
            s += &format!("{} {} {} {}\n", e.x, e.q, brute[&e.x], tag.as_str().unwrap_or(""));
        }
        s + &format!("agree {agree}\n")
    });
    agreement(agree, "q table")
}

fn nrs(out: &Out, w: &str) -> Outcome {
    let w = element(w)?;
    let mut points: Vec<AffineElement> = nrs_set(&w).into_iter().collect();
    points.sort_by_cached_key(|x| (x.length(), x.word()));
    let maximal = maximal_nrs(&w);
    let scan = maximal_nrs_generic(&w);
    #[derive(Serialize)]
    struct Nrs {
        owner: AffineElement,
        nrs: Vec<AffineElement>,
        maximal_nrs: Vec<AffineElement>,
        maximal_nrs_scan: Vec<AffineElement>,
        agree: bool,
        nrs_codim: Option<usize>,
    }
    let row = Nrs { owner: w, agree: maximal == scan, nrs: points, maximal_nrs: maximal, maximal_nrs_scan: scan, nrs_codim: nrs_codimension(&w) };
    out.emit(&row, || {
        format!(
            "nrs {}\nmaximal {}\nmaximal-scan {}\nagree {}\ncodim {}\n",
            row.nrs.len(),
            words(&row.maximal_nrs),
            words(&row.maximal_nrs_scan),
            row.agree,
            opt(row.nrs_codim)
        )
    });
    agreement(row.agree, "maximal nrs points")
}

fn smooth(out: &Out, w: &str) -> Outcome {
    let w = element(w)?;
    let points = smooth_points(&w);
    let kumar = (w.length() <= KUMAR_CAP)
        .then(|| -> Result<bool, schubert_a2::Error> {
            let sing = kumar_singular_set(&w)?;
            Ok(points.iter().all(|x| !sing.contains(x))
                && schubert_a2::bruhat::interval(&w).iter().all(|x| sing.contains(x) || points.contains(x)))
        })
        .transpose()?;
    #[derive(Serialize)]
    struct Smooth {
        owner: AffineElement,
        smooth: Vec<AffineElement>,
        maximal_singular: Vec<AffineElement>,
        singular_codim: Option<usize>,
        /// Agreement with the Kumar scan; null above the length cap.
        kumar_agree: Option<bool>,
    }
    let row = Smooth {
        owner: w,
        maximal_singular: maximal_singular(&w),
        singular_codim: singular_codim(&w),
        smooth: points,
        kumar_agree: kumar,
    };
    out.emit(&row, || {
        format!(
            "smooth {}\n{}\nmaximal-singular {}\ncodim {}\nkumar-agree {}\n",
            row.smooth.len(),
            words(&row.smooth),
            words(&row.maximal_singular),
            opt(row.singular_codim),
            opt(row.kumar_agree)
        )
    });
    agreement(kumar != Some(false), "smooth points")
}

fn classify(out: &Out, w: &str) -> Outcome {
    let w = element(w)?;
    #[derive(Serialize)]
    struct Classify {
        owner: AffineElement,
        length: usize,
        spiral: bool,
        chamber: Option<String>,
        #[serde(rename = "type")]
        type_: Option<u8>,
        classification: Classification,
        base_case: Option<schubert_a2::qstat::BaseCase>,
        nrs_codim: Option<usize>,
        singular_codim: Option<usize>,
    }
    let row = Classify {
        owner: w,
        length: w.length(),
        spiral: w.is_spiral(),
        chamber: w.chamber().map(|c| c.to_string()),
        type_: w.type_of().ok(),
        classification: classify_schubert(&w),
        base_case: base_case(&w),
        nrs_codim: nrs_codimension(&w),
        singular_codim: singular_codim(&w),
    };
    out.emit(&row, || {
        let class = serde_json::to_value(row.classification).expect("class");
        let case = row.base_case.map(|b| format!("{b:?}"));
        format!(
            "{}\nlength {}\nchamber {}\ntype {}\nbase-case {}\nnrs-codim {}\nsingular-codim {}\n",
            class.as_str().unwrap_or(""),
            row.length,
            row.chamber.clone().unwrap_or_else(|| "spiral".into()),
            opt(row.type_),
            opt(case),
            opt(row.nrs_codim),
            opt(row.singular_codim)
        )
    });
    Ok(())
}

fn mult(out: &Out, w: &str, x: &str) -> Outcome {
    let (w, x) = (element(w)?, element(x)?);
    below(&x, &w)?;
    let m = multiplicity(&w, &x)?;
    let target = smooth_target(&w, &x)?;
    let kumar = kumar_smooth(&w, &x)?;
    let closed = smooth_points(&w).contains(&x);
    #[derive(Serialize)]
    struct Mult {
        w: AffineElement,
        x: AffineElement,
        multiplicity: RationalNF,
        smooth_target: RationalNF,
        kumar_smooth: bool,
        closed_form_smooth: bool,
        agree: bool,
    }
    let row = Mult { w, x, multiplicity: m, smooth_target: target, kumar_smooth: kumar, closed_form_smooth: closed, agree: kumar == closed };
    out.emit(&row, || {
        format!(
            "multiplicity {}\ntarget {}\nkumar-smooth {kumar}\nclosed-form-smooth {closed}\nagree {}\n",
            row.multiplicity, row.smooth_target, row.agree
        )
    });
    agreement(row.agree, "smoothness")
}

fn verify(out: &Out, max_length: usize, suite: Suite, jobs: usize) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;
    let bounds = Bounds::capped(max_length);
    let mut results = pool.install(|| run_suite(suite, &bounds));
    results.sort_by_key(|r| r.criterion);
    let passed = results.iter().all(|r| r.passed);
    #[derive(Serialize)]
    struct Summary<'a> {
        suite: Suite,
        bounds: Bounds,
        passed: bool,
        results: &'a [CheckResult],
    }
    out.emit(&Summary { suite, bounds, passed, results: &results }, || {
        let mut s = String::new();
        for r in &results {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            s += &format!("criterion {} {verdict} {} checked {}\n", r.criterion, r.name, r.checked);
            for f in &r.failures {
                s += &format!("  {f}\n");
            }
        }
        let ok = results.iter().filter(|r| r.passed).count();
        s + &format!("{ok}/{} passed\n", results.len())
    });
    if passed {
        Ok(())
    } else {
        let bad: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.criterion.to_string()).collect();
        Err(Failure::Verification(format!("failed criteria: {}", bad.join(", "))))
    }
}

fn enumerate_smooth(out: &Out) {
    let rows = enumerate_smooth_varieties();
    let total: usize = rows.iter().map(|r| r.count).sum();
    #[derive(Serialize)]
    struct Table<'a> {
        rows: &'a [SmoothClass],
        total: usize,
    }
    out.emit(&Table { rows: &rows, total }, || {
        let mut s = String::from("length pattern count members\n");
        for r in &rows {
            s += &format!("{} {} {} {}\n", r.length, r.pattern, r.count, r.members.join(","));
        }
        s + &format!("total {total}\n")
    });
}

fn render_cmd(out: &Out, w: &str, path: &PathBuf, layers: Vec<Layer>, labels: Labels, viewport: Option<Viewport>) -> Outcome {
    let w = element(w)?;
    let config = std::env::var_os("SCHUBERT_A2_CONFIG").map(PathBuf::from);
    let palette = Palette::load(config.as_deref())?;
    let hull = schubert_a2::bruhat::Hull::of(&w);
    let spec = RenderSpec { viewport: viewport.unwrap_or_else(|| Viewport::around(&hull, 1.5)), layers, labels };
    let payload = Payload::for_spec(&w, &spec);
    let svg = render::render(&spec, &payload, &palette)?;
    std::fs::write(path, &svg).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    #[derive(Serialize)]
    struct Written<'a> {
        out: &'a PathBuf,
        bytes: usize,
    }
    out.emit(&Written { out: path, bytes: svg.len() }, || format!("wrote {} ({} bytes)\n", path.display(), svg.len()));
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let out = Out { json: cli.json };
    match cli.cmd {
        Cmd::Order { x, w } => order(&out, &x, &w),
        Cmd::Hexagon { w } => hexagon(&out, &w),
        Cmd::Q { w, x } => q(&out, &w, x.as_deref()),
        Cmd::Nrs { w } => nrs(&out, &w),
        Cmd::Smooth { w } => smooth(&out, &w),
        Cmd::Classify { w } => classify(&out, &w),
        Cmd::Mult { w, x } => mult(&out, &w, &x),
        Cmd::Verify { max_length, suite, jobs } => verify(&out, max_length, suite.into(), jobs),
        Cmd::EnumerateSmooth => {
            enumerate_smooth(&out);
            Ok(())
        }
        Cmd::Render { w, out: path, layers, labels, viewport } => render_cmd(&out, &w, &path, layers, labels, viewport),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
