mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use folaut::autgrp::{
    group_closure, hij_system, preserves, pullback, signed_permutation_automorphisms, verify_bound, AutError,
    DEFAULT_CAP,
};
use folaut::bounds::{self, BoundsError, CharNumbers};
use folaut::localfol::{
    ampleness_necessary_check, blowup_point, canonical_transform, reduced_check, LocalError, NonReducedReason,
    Reducedness, SurfaceNumbers,
};
use folaut::symforms::{default_sample_points, FormError};
use folaut::{Form, Rational};
use num_bigint::BigUint;
use serde_json::{json, Value};

use input::Points;
use output::Document;

const DEFAULT_POINTS: usize = 3;

#[derive(Parser)]
#[command(name = "fol", version, about = "Exact computations with projective webs and foliations")]
struct Cli {
    /// Print a readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormArg {
    /// Form file, or inline JSON.
    #[arg(long)]
    form: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check every web invariant; exits 1 naming the first violated one.
    Validate(FormArg),
    /// Web degree d, k, N and deg K_F for plane foliations.
    Degree(FormArg),
    /// Contraction with the radial field; exits 1 if nonzero.
    Euler(FormArg),
    /// Whether ω ∧ dω = 0 (k = 1 only).
    Integrable(FormArg),
    /// Lie derivative along a vector field.
    Lie {
        #[arg(long)]
        form: String,
        /// `"y d/dx"`, a JSON array of polynomials, or a file holding one.
        #[arg(long)]
        field: String,
    },
    /// Whether a projective map preserves the form.
    Preserves {
        #[arg(long)]
        form: String,
        #[arg(long)]
        map: String,
    },
    /// Pullback T*ω (unnormalized).
    Pullback {
        #[arg(long)]
        form: String,
        #[arg(long)]
        map: String,
    },
    /// Tangency binary form on the line through p and q.
    Restrict {
        #[arg(long)]
        form: String,
        /// `"p;q"`, e.g. `"1,0,0;0,1,0"`.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
    /// Square-freeness of ω at sample points.
    Squarefree {
        #[arg(long)]
        form: String,
        /// A count of default points, or `"p1;p2;..."`.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Polynomial system satisfied by the automorphisms; `--table` gives the ideal listing.
    Hij {
        #[arg(long)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Group generated by the given maps, or by all preserving signed permutations.
    Closure {
        #[arg(long)]
        form: String,
        #[arg(long)]
        map: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Blow-up of the origin for a local foliation.
    Blowup(FormArg),
    /// Surface numbers after a blow-up of vanishing order l.
    Ktransform {
        #[arg(long, allow_hyphen_values = true)]
        kf2: i64,
        #[arg(long, allow_hyphen_values = true)]
        kfkx: i64,
        /// Vanishing order; taken from blowing up `--form` when absent.
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        form: Option<String>,
    },
    /// Reducedness of a singularity, from a 2×2 linear part or a local foliation.
    Reduced {
        #[arg(long, conflicts_with = "form", required_unless_present = "form")]
        map: Option<String>,
        #[arg(long)]
        form: Option<String>,
    },
    /// Automorphism bound of a web (`--d --k --n`) or of a foliated surface (`--kf2 --kfkx`).
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        kf2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        kfkx: Option<String>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Check a group order against the web bound.
        #[arg(long)]
        order: Option<BigUint>,
        /// Include the bound in full decimal.
        #[arg(long)]
        full_digits: bool,
    },
    /// Characteristic numbers of the dual web: `d_0,...,d_{N-1}` reversed.
    Duality {
        /// Comma-separated `d_0,...,d_{N-1}`.
        values: String,
    },
}

/// A failure with its exit code and stable name.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    name: String,
    message: String,
}

impl Failure {
    pub fn input(name: &str, message: impl Into<String>) -> Self {
        Failure { code: 2, name: name.into(), message: message.into() }
    }

    fn computation(name: &str, message: impl Into<String>) -> Self {
        Failure { code: 3, name: name.into(), message: message.into() }
    }
}

impl From<FormError> for Failure {
    fn from(e: FormError) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 3 }, name: e.name().into(), message: e.to_string() }
    }
}

impl From<AutError> for Failure {
    fn from(e: AutError) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 3 }, name: e.name().into(), message: e.to_string() }
    }
}

impl From<LocalError> for Failure {
    fn from(e: LocalError) -> Self {
        let code = if matches!(e, LocalError::Overflow) { 3 } else { 2 };
        Failure { code, name: e.name().into(), message: e.to_string() }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        let code = if matches!(e, BoundsError::TooLarge(_)) { 3 } else { 2 };
        Failure { code, name: e.name().into(), message: e.to_string() }
    }
}

fn rat_str(q: &Rational) -> String {
    folaut::exactalg::json::rational_to_string(q)
}

fn point_json(p: &[Rational]) -> Value {
    p.iter().map(rat_str).collect()
}

fn sample_points(form: &Form, given: Option<&str>) -> Result<Vec<Vec<Rational>>, Failure> {
    match given.map(input::points).transpose()? {
        None => Ok(default_sample_points(form, DEFAULT_POINTS)),
        Some(Points::Count(n)) => Ok(default_sample_points(form, n)),
        Some(Points::List(list)) => Ok(list),
    }
}

fn run(command: Command) -> Result<Document, Failure> {
    Ok(match command {
        Command::Validate(a) => {
            let w = input::raw_form(&a.form)?;
            match w.validate() {
                Ok(()) => {
                    let deg = w.web_degree()?;
                    Document::new(json!({"valid": true, "N": deg.n, "k": deg.k, "d": deg.d}))
                }
                Err(e) => Document::new(json!({"valid": false, "error": e.name(), "message": e.to_string()})).fail(),
            }
        }
        Command::Degree(a) => {
            let deg = input::form(&a.form)?.web_degree()?;
            Document::new(json!({"d": deg.d, "k": deg.k, "N": deg.n, "KF_degree": deg.kf_degree}))
        }
        Command::Euler(a) => {
            let c = input::raw_form(&a.form)?.euler_contract();
            Document::new(json!({"contraction": c.to_string(), "zero": c.is_zero()})).check(c.is_zero())
        }
        Command::Integrable(a) => {
            let ok = input::form(&a.form)?.is_integrable()?;
            Document::new(json!({ "integrable": ok })).check(ok)
        }
        Command::Lie { form, field } => {
            let w = input::form(&form)?;
            let v = input::field(&field, w.n() + 1)?;
            let lie = w.lie_derivative(&v)?;
            // for linear fields the flow acts projectively, so proportionality suffices
            let preserved = if v.is_linear() || v.degree()?.is_none() {
                w.proportional_to(&lie) || lie.is_zero()
            } else {
                lie.is_zero()
            };
            Document::new(json!({"lie_derivative": lie.to_string(), "preserved": preserved})).check(preserved)
        }
        Command::Preserves { form, map } => {
            let (w, t) = (input::form(&form)?, input::map(&map)?);
            let ok = preserves(&t, &w)?;
            let factor = w.ratio_to(&pullback(&t, &w)?).filter(|_| ok);
            Document::new(json!({"preserves": ok, "factor": factor.as_ref().map(rat_str)})).check(ok)
        }
        Command::Pullback { form, map } => {
            let (w, t) = (input::form(&form)?, input::map(&map)?);
            let pulled = pullback(&t, &w)?;
            Document::new(serde_json::to_value(&pulled).expect("serializable")).with_text(pulled.to_string())
        }
        Command::Restrict { form, line } => {
            let w = input::form(&form)?;
            let (p, q) = input::line(&line)?;
            let b = w.restrict_to_line(&p, &q)?;
            let text = b.to_polynomial().to_string_with(&["s", "t"]);
            let mut value = serde_json::to_value(&b).expect("serializable");
            value["polynomial"] = json!(text);
            Document::new(value)
        }
        Command::Squarefree { form, points } => {
            let w = input::form(&form)?;
            let pts = sample_points(&w, points.as_deref())?;
            let mut rows = Vec::new();
            let mut all = true;
            for p in &pts {
                let ok = w.squarefree_at(p)?;
                all &= ok;
                rows.push(json!({"point": point_json(p), "squarefree": ok}));
            }
            Document::new(json!({"squarefree": all, "points": rows})).check(all)
        }
        Command::Hij { form, points } => {
            let w = input::form(&form)?;
            let pts = sample_points(&w, points.as_deref())?;
            let sys = hij_system(&w, &pts)?;
            Document::new(serde_json::to_value(&sys).expect("serializable")).with_text(sys.to_ideal_text())
        }
        Command::Closure { form, map, cap } => {
            let w = input::form(&form)?;
            let gens = if map.is_empty() {
                signed_permutation_automorphisms(&w)?
            } else {
                map.iter().map(|m| input::map(m)).collect::<Result<Vec<_>, _>>()?
            };
            let group = group_closure(&gens, &w, cap)?;
            let deg = w.web_degree()?;
            let n = u32::try_from(w.n()).map_err(|_| Failure::input("domain", "N too large"))?;
            let order = BigUint::from(group.order());
            let within = verify_bound(&order, deg.d, deg.k, n)?;
            let bound = bounds::web_aut_bound(deg.d, deg.k, n)?;
            let elements: Vec<Value> = group.elements().map(|t| serde_json::to_value(t).expect("serializable")).collect();
            Document::new(json!({
                "order": group.order(),
                "bound": bound.to_string(),
                "within_bound": within,
                "elements": elements,
            }))
            .check(within)
        }
        Command::Blowup(a) => {
            let f = input::local(&a.form)?;
            let r = blowup_point(&f)?;
            let mut value = serde_json::to_value(&r).expect("serializable");
            value["chart1_text"] = json!(r.chart1.to_string_with(["x", "t"]));
            value["chart2_text"] = json!(r.chart2.to_string_with(["s", "y"]));
            value["charts_consistent"] = json!(r.charts_consistent());
            Document::new(value)
        }
        Command::Ktransform { kf2, kfkx, l, form } => {
            let l = match (l, form) {
                (Some(l), _) => l,
                (None, Some(f)) => blowup_point(&input::local(&f)?)?.l,
                (None, None) => return Err(Failure::input("missing_argument", "give --l or --form")),
            };
            let up = canonical_transform(SurfaceNumbers { kf2, kfkx }, l)?;
            Document::new(json!({
                "l": l,
                "KF2": up.kf2,
                "KFKX": up.kfkx,
                "ample_necessary": ampleness_necessary_check(up),
            }))
        }
        Command::Reduced { map, form } => {
            let m = match (map, form) {
                (Some(m), _) => input::matrix2(&m)?,
                (None, Some(f)) => input::local(&f)?.linear_part(),
                (None, None) => unreachable!("clap requires one of them"),
            };
            match reduced_check(&m) {
                Reducedness::Reduced => Document::new(json!({"reduced": true})),
                Reducedness::NonReduced(reason) => {
                    let quotient = match &reason {
                        NonReducedReason::PositiveRationalQuotient(q) => Some(rat_str(q)),
                        NonReducedReason::BothEigenvaluesZero => None,
                    };
                    Document::new(json!({"reduced": false, "reason": reason.to_string(), "quotient": quotient}))
                        .fail()
                }
            }
        }
        Command::Bounds { kf2, kfkx, d, k, n, order, full_digits } => match (kf2, kfkx, d, k, n) {
            (Some(kf2), Some(kfkx), None, None, None) => {
                let report = bounds::main_bound(&bounds::parse_int(&kf2)?, &bounds::parse_int(&kfkx)?)?;
                let mut value = serde_json::to_value(&report).expect("serializable");
                if full_digits {
                    let full = report.final_bound().ok_or_else(|| {
                        Failure::computation(
                            "too_large",
                            format!("more than {} digits; not materialized", bounds::MATERIALIZE_DIGIT_LIMIT),
                        )
                    })?;
                    value["final_bound"] = json!(full.to_string());
                }
                Document::new(value)
            }
            (None, None, Some(d), Some(k), Some(n)) => {
                let bound = bounds::web_aut_bound(d, k, n)?;
                let digits = bound.to_string();
                let mut value = json!({"d": d, "k": k, "N": n, "digit_count": digits.len()});
                if full_digits || digits.len() <= 40 {
                    value["bound"] = json!(digits);
                }
                match order {
                    Some(order) => {
                        let ok = verify_bound(&order, d, k, n)?;
                        value["order"] = json!(order.to_string());
                        value["within_bound"] = json!(ok);
                        Document::new(value).check(ok)
                    }
                    None => Document::new(value),
                }
            }
            _ => return Err(Failure::input("missing_argument", "give either --kf2 and --kfkx, or --d, --k and --n")),
        },
        Command::Duality { values } => {
            let values = input::integer_list(&values)?;
            let c = CharNumbers::new(values.len(), values)?;
            let dual = bounds::duality_transform(&c);
            let show = |c: &CharNumbers| c.values().iter().map(ToString::to_string).collect::<Vec<_>>();
            Document::new(json!({"N": c.n(), "values": show(&c), "dual": show(&dual)}))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(doc) => {
            print!("{}", doc.render(cli.table));
            ExitCode::from(doc.code())
        }
        Err(f) => {
            let doc = Document::new(json!({"error": f.name, "message": f.message}));
            print!("{}", doc.render(cli.table));
            eprintln!("fol: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
