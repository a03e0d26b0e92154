//! Command-line front end for the engine: expression parsing, JSON and
//! text output, and one subcommand per engine capability.

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use harrison::algebra::CommAlgebra;
use harrison::center::{center_basis, center_over_polycoeffs, ParametricForm};
use harrison::decompose::{decompose_with_seed, diagonalize, verify_decomposition};
use harrison::forms::Form;
use harrison::identity::{
    refute_composition, thm32_center_dim, thm32_form, verify_power_identity, ZSpec,
};
use harrison::matrix::Mat;
use harrison::poly::Polynomial;
use harrison::Rational;

use harrison_cli::doc::{
    default_variables, parse_rational, print_polynomial, rational_string, FormDocument,
    ZSpecDocument,
};
use harrison_cli::parse::{canonical_variable_order, parse_polynomial};

#[derive(Parser)]
#[command(name = "harrison", version, about = "Exact centers, decompositions, and power-identity checks for homogeneous forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FormInput {
    /// JSON input file (FormDocument)
    #[arg(short, long)]
    input: Option<String>,
    /// Inline polynomial expression
    #[arg(long)]
    expr: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Basis and dimension of the center of a form
    Center {
        #[command(flatten)]
        form: FormInput,
        /// Comma-separated variables treated as polynomial parameters
        #[arg(long)]
        params: Option<String>,
    },
    /// Direct-sum decomposition via central idempotents
    Decompose {
        #[command(flatten)]
        form: FormInput,
    },
    /// Diagonalize a form, when possible
    Diagonalize {
        #[command(flatten)]
        form: FormInput,
    },
    /// Complete set of primitive orthogonal idempotents of the center
    Idempotents {
        #[command(flatten)]
        form: FormInput,
    },
    /// Verify a sums-of-powers composition identity (ZSpec JSON input)
    CheckIdentity {
        #[arg(short, long)]
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certificate that x_1^d + .. + x_r^d is not a d-th power
    Refute {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        d: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Center dimension of sum y_k^d + (sum a_k y_k)^d
    Thm32 {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: u32,
        /// Comma-separated nonzero rational coefficients
        #[arg(short)]
        a: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Symmetric tensor entries of a form
    Symtensor {
        #[command(flatten)]
        form: FormInput,
    },
}

/// Input/parse/validation failures exit 1; computation failures exit 2.
enum AppError {
    Input(anyhow::Error),
    Compute(anyhow::Error),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(AppError::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(AppError::Compute(e)) => {
            eprintln!("computation failed: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Load a form plus its variable names and the raw input used for the
/// digest.
fn load_form(input: &FormInput) -> Result<(Form, Vec<String>, Vec<u8>)> {
    let (poly, vars, raw) = load_polynomial(input, None)?;
    let form = Form::from_poly(poly).map_err(|e| anyhow!("{e}"))?;
    Ok((form, vars, raw))
}

fn load_polynomial(
    input: &FormInput,
    declared: Option<&[String]>,
) -> Result<(Polynomial, Vec<String>, Vec<u8>)> {
    match (&input.input, &input.expr) {
        (Some(path), None) => {
            let bytes = fs::read(path).with_context(|| format!("reading {path}"))?;
            let doc: FormDocument =
                serde_json::from_slice(&bytes).context("parsing FormDocument JSON")?;
            let poly = doc.to_polynomial()?;
            Ok((poly, doc.variables, bytes))
        }
        (None, Some(expr)) => {
            let (poly, vars) = parse_polynomial(expr, declared)?;
            Ok((poly, vars, expr.clone().into_bytes()))
        }
        (Some(_), Some(_)) => bail!("supply either --input or --expr, not both"),
        (None, None) => bail!("an input is required: --input FILE or --expr EXPR"),
    }
}

fn matrix_strings(m: &Mat<Rational>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|c| Value::String(rational_string(c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_text(m: &Mat<Rational>) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(rational_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn render(format: Format, command: &str, input_digest: &str, result: Value, text: String) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let out = json!({
                "command": command,
                "input_digest": input_digest,
                "result": result,
            });
            serde_json::to_string(&out).expect("serializable")
        }
    }
}

fn input_err(e: anyhow::Error) -> AppError {
    AppError::Input(e)
}

fn run(command: Command) -> Result<String, AppError> {
    match command {
        Command::Center { form, params } => cmd_center(&form, params.as_deref()),
        Command::Decompose { form } => cmd_decompose(&form),
        Command::Diagonalize { form } => cmd_diagonalize(&form),
        Command::Idempotents { form } => cmd_idempotents(&form),
        Command::CheckIdentity { input, format } => cmd_check_identity(&input, format),
        Command::Refute { r, d, format } => cmd_refute(r, d, format),
        Command::Thm32 { n, d, a, format } => cmd_thm32(n, d, &a, format),
        Command::Symtensor { form } => cmd_symtensor(&form),
    }
}

fn cmd_center(input: &FormInput, params: Option<&str>) -> Result<String, AppError> {
    if let Some(param_list) = params {
        return cmd_center_parametric(input, param_list);
    }
    let (form, vars, raw) = load_form(input).map_err(input_err)?;
    let cb = center_basis(&form).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let result = json!({
        "dim": cb.dim(),
        "variables": vars,
        "basis": cb.basis.iter().map(matrix_strings).collect::<Vec<_>>(),
    });
    let mut text = format!("center dimension: {}\n", cb.dim());
    for (k, b) in cb.basis.iter().enumerate() {
        text.push_str(&format!("basis[{k}]:\n{}\n", matrix_text(b)));
    }
    Ok(render(input.format, "center", &digest(&raw), result, text.trim_end().into()))
}

fn cmd_center_parametric(input: &FormInput, param_list: &str) -> Result<String, AppError> {
    let params: Vec<String> = param_list
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if params.is_empty() {
        return Err(input_err(anyhow!("--params list is empty")));
    }
    // collect variables first, then reparse with parameters leading
    let (_, all_vars, _) = load_polynomial(input, None).map_err(input_err)?;
    for p in &params {
        if !all_vars.contains(p) {
            return Err(input_err(anyhow!("parameter {p:?} does not occur in the input")));
        }
    }
    let mut main_vars: Vec<String> = all_vars
        .iter()
        .filter(|v| !params.contains(v))
        .cloned()
        .collect();
    main_vars.sort_by(|a, b| canonical_variable_order(a, b));
    let mut declared = params.clone();
    declared.extend(main_vars.iter().cloned());
    let (poly, vars, raw) = load_polynomial(input, Some(&declared)).map_err(input_err)?;
    let pf = ParametricForm {
        poly,
        nparams: params.len(),
    };
    let pcb = center_over_polycoeffs(&pf).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let entry_strings = |m: &Mat<Polynomial>| -> Value {
        Value::Array(
            (0..m.rows())
                .map(|i| {
                    Value::Array(
                        m.row(i)
                            .iter()
                            .map(|p| Value::String(print_polynomial(p, &params)))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    let result = json!({
        "dim": pcb.dim(),
        "parameters": params,
        "variables": vars[params.len()..].to_vec(),
        "basis": pcb.basis.iter().map(entry_strings).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "center dimension over the parameter field: {}\n",
        pcb.dim()
    );
    for (k, b) in pcb.basis.iter().enumerate() {
        text.push_str(&format!("basis[{k}]:\n"));
        for i in 0..b.rows() {
            let row: Vec<String> = b.row(i).iter().map(|p| print_polynomial(p, &params)).collect();
            text.push_str(&format!("{}\n", row.join(" | ")));
        }
    }
    Ok(render(input.format, "center", &digest(&raw), result, text.trim_end().into()))
}

fn block_documents(blocks: &[(usize, Form)]) -> Result<Vec<FormDocument>> {
    let mut docs = Vec::new();
    for (offset, b) in blocks {
        let names: Vec<String> = (0..b.nvars())
            .map(|i| format!("y{}", offset + i + 1))
            .collect();
        docs.push(FormDocument::from_polynomial(b.poly(), &names)?);
    }
    Ok(docs)
}

fn cmd_decompose(input: &FormInput) -> Result<String, AppError> {
    let (form, _, raw) = load_form(input).map_err(input_err)?;
    let dec = decompose_with_seed(&form, input.seed)
        .map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let verified = verify_decomposition(&form, &dec);
    let docs = block_documents(&dec.blocks).map_err(AppError::Compute)?;
    let result = json!({
        "block_count": dec.block_count(),
        "p": matrix_strings(&dec.p),
        "blocks": docs,
        "verified": verified,
    });
    let mut text = format!("blocks: {}\n", dec.block_count());
    text.push_str(&format!("change of variables P:\n{}\n", matrix_text(&dec.p)));
    for (i, (offset, b)) in dec.blocks.iter().enumerate() {
        let names: Vec<String> = (0..b.nvars())
            .map(|k| format!("y{}", offset + k + 1))
            .collect();
        text.push_str(&format!("block[{i}]: {}\n", print_polynomial(b.poly(), &names)));
    }
    text.push_str(&format!("verified: {verified}"));
    Ok(render(input.format, "decompose", &digest(&raw), result, text))
}

fn cmd_diagonalize(input: &FormInput) -> Result<String, AppError> {
    let (form, _, raw) = load_form(input).map_err(input_err)?;
    let outcome = diagonalize(&form).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let (result, text) = match outcome {
        Some((p, coeffs)) => {
            let cs: Vec<String> = coeffs.iter().map(rational_string).collect();
            (
                json!({
                    "diagonalizable": true,
                    "p": matrix_strings(&p),
                    "coefficients": cs.clone(),
                }),
                format!(
                    "diagonalizable: true\nchange of variables P:\n{}\ncoefficients: {}",
                    matrix_text(&p),
                    cs.join(", ")
                ),
            )
        }
        None => (
            json!({
                "diagonalizable": false,
                "p": Value::Null,
                "coefficients": Value::Null,
            }),
            "diagonalizable: false".to_string(),
        ),
    };
    Ok(render(input.format, "diagonalize", &digest(&raw), result, text))
}

fn cmd_idempotents(input: &FormInput) -> Result<String, AppError> {
    let (form, _, raw) = load_form(input).map_err(input_err)?;
    let cb = center_basis(&form).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let algebra =
        CommAlgebra::from_matrix_span(&cb.basis).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let set = algebra
        .split_idempotents(input.seed)
        .map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let result = json!({
        "count": set.len(),
        "idempotents": set.matrices.iter().map(matrix_strings).collect::<Vec<_>>(),
    });
    let mut text = format!("idempotents: {}\n", set.len());
    for (k, m) in set.matrices.iter().enumerate() {
        text.push_str(&format!("e[{k}]:\n{}\n", matrix_text(m)));
    }
    Ok(render(input.format, "idempotents", &digest(&raw), result, text.trim_end().into()))
}

fn zspec_from_document(doc: &ZSpecDocument) -> Result<ZSpec> {
    if doc.q.variables.len() != doc.r {
        bail!(
            "q has {} variables but r = {}",
            doc.q.variables.len(),
            doc.r
        );
    }
    if doc.numerators.len() != doc.n {
        bail!(
            "{} numerator rows but n = {}",
            doc.numerators.len(),
            doc.n
        );
    }
    let q = doc.q.to_polynomial()?;
    let mut numerators = Vec::new();
    for row in &doc.numerators {
        let mut out = Vec::new();
        for entry in row {
            if entry.variables != doc.q.variables {
                bail!("numerator variables differ from q's variables");
            }
            out.push(entry.to_polynomial()?);
        }
        numerators.push(out);
    }
    Ok(ZSpec {
        r: doc.r,
        d: doc.d,
        q,
        numerators,
    })
}

fn cmd_check_identity(path: &str, format: Format) -> Result<String, AppError> {
    let bytes = fs::read(path)
        .with_context(|| format!("reading {path}"))
        .map_err(input_err)?;
    let doc: ZSpecDocument = serde_json::from_slice(&bytes)
        .context("parsing ZSpec JSON")
        .map_err(input_err)?;
    let spec = zspec_from_document(&doc).map_err(input_err)?;
    spec.validate().map_err(|e| input_err(anyhow!("{e}")))?;
    let (holds, residual) =
        verify_power_identity(&spec).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let mut joint_vars = doc.q.variables.clone();
    joint_vars.extend((1..=spec.num_y()).map(|j| format!("y{j}")));
    let residual_doc =
        FormDocument::from_polynomial(&residual, &joint_vars).map_err(AppError::Compute)?;
    let result = json!({
        "holds": holds,
        "residual": residual_doc,
    });
    let text = format!(
        "identity holds: {holds}\nresidual: {}",
        print_polynomial(&residual, &joint_vars)
    );
    Ok(render(format, "check-identity", &digest(&bytes), result, text))
}

fn cmd_refute(r: usize, d: u32, format: Format) -> Result<String, AppError> {
    let cert = refute_composition(r, d).map_err(|e| input_err(anyhow!("{e}")))?;
    let replay_ok = cert.replay();
    let names: Vec<String> = default_variables("a", r);
    let units: Vec<String> = cert
        .unit_equations
        .iter()
        .map(|p| print_polynomial(p, &names))
        .collect();
    let cross = print_polynomial(&cert.cross_equation, &names);
    let canonical_input = format!("r={r};d={d}");
    let result = json!({
        "r": r,
        "d": d,
        "kind": cert.kind.to_string(),
        "unit_equations": units.clone(),
        "cross_equation": cross.clone(),
        "replay_ok": replay_ok,
    });
    let text = format!(
        "x1^{d} + .. + x{r}^{d} is not the d-th power of a linear form\nkind: {}\nequations forced to vanish:\n  {}\n  {cross} = 0\nreplay consistent: {replay_ok}",
        cert.kind,
        units.join(" = 0\n  ") + " = 0",
    );
    Ok(render(format, "refute", &digest(canonical_input.as_bytes()), result, text))
}

fn cmd_thm32(n: usize, d: u32, a_list: &str, format: Format) -> Result<String, AppError> {
    let a: Vec<Rational> = a_list
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<_>>()
        .map_err(input_err)?;
    if a.len() != n {
        return Err(input_err(anyhow!(
            "expected {n} coefficients, got {}",
            a.len()
        )));
    }
    let g = thm32_form(n, d, &a).map_err(|e| input_err(anyhow!("{e}")))?;
    let dim = thm32_center_dim(n, d, &a).map_err(|e| AppError::Compute(anyhow!("{e}")))?;
    let names = default_variables("y", n);
    let form_doc = FormDocument::from_polynomial(g.poly(), &names).map_err(AppError::Compute)?;
    let canonical_input = format!(
        "n={n};d={d};a={}",
        a.iter().map(rational_string).collect::<Vec<_>>().join(",")
    );
    let result = json!({
        "center_dim": dim,
        "form": form_doc,
    });
    let text = format!(
        "g = {}\ncenter dimension: {dim}",
        print_polynomial(g.poly(), &names)
    );
    Ok(render(format, "thm32", &digest(canonical_input.as_bytes()), result, text))
}

fn cmd_symtensor(input: &FormInput) -> Result<String, AppError> {
    let (form, vars, raw) = load_form(input).map_err(input_err)?;
    let tensor = form.tensor();
    let entries: Vec<Value> = tensor
        .entries()
        .map(|(idx, v)| {
            json!({
                "indices": idx,
                "value": rational_string(v),
            })
        })
        .collect();
    let result = json!({
        "order": tensor.order(),
        "dim": tensor.dim(),
        "entries": entries,
    });
    let mut text = format!("order: {}\ndim: {}\n", tensor.order(), tensor.dim());
    for (idx, v) in tensor.entries() {
        let named: Vec<&str> = idx.iter().map(|&i| vars[i].as_str()).collect();
        text.push_str(&format!("({}) = {}\n", named.join(","), rational_string(v)));
    }
    Ok(render(input.format, "symtensor", &digest(&raw), result, text.trim_end().into()))
}
