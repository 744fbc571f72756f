use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rankgpt::attacks::{
    brute_force_decode_oracle, cost_report, distinguisher_trials, overbeck_distinguish,
    reproduce_table, security_status, CostInputs, CostReport, DistinguisherResult, TableRow,
    TrialSummary,
};
use rankgpt::gpt::{self, Ciphertext};
use rankgpt::{GptParams, GptPrivateKey, GptPublicKey};
use serde_json::{json, Value};

use crate::args::{
    AnalyzeArgs, AttackArgs, Cli, Command, DecryptArgs, EncryptArgs, KeygenArgs, ParamArgs,
    ReportFormat,
};
use crate::formats::{self, Artifact, CiphertextFile};
use crate::message;
use crate::CliError;

/// Runs a command and returns its standard output.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Keygen(a) => keygen(&a),
        Command::Encrypt(a) => encrypt(&a),
        Command::Decrypt(a) => decrypt(&a),
        Command::Analyze(a) => analyze(&a),
        Command::Attack(a) => attack(&a),
    }
}

pub fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<Artifact, CliError> {
    formats::decode(&read(path)?).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn load_public(path: &Path) -> Result<GptPublicKey, CliError> {
    load(path)?
        .into_public()
        .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn load_private(path: &Path) -> Result<GptPrivateKey, CliError> {
    load(path)?
        .into_private()
        .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn load_ciphertext(path: &Path) -> Result<CiphertextFile, CliError> {
    load(path)?
        .into_ciphertext()
        .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn same_params(expected: &GptParams, found: &GptParams) -> Result<(), CliError> {
    if expected == found {
        Ok(())
    } else {
        Err(CliError::Param(
            "the ciphertext was produced under different system parameters than the key".into(),
        ))
    }
}

fn keygen(args: &KeygenArgs) -> Result<String, CliError> {
    let params = args.params.resolve()?;
    let (pk, sk) = gpt::keygen(&params, &mut rng(args.seed))?;
    let bits = pk.key_bits();
    write(
        &args.pub_out,
        &formats::encode(&Artifact::Public(pk), args.format),
    )?;
    write(
        &args.priv_out,
        &formats::encode(&Artifact::Private(sk), args.format),
    )?;
    Ok(format!(
        "public key size: {bits:.0} bits\npublic key: {}\nprivate key: {}\n",
        args.pub_out.display(),
        args.priv_out.display()
    ))
}

fn encrypt(args: &EncryptArgs) -> Result<String, CliError> {
    let pk = load_public(&args.key)?;
    let msg = read(&args.input)?;
    let blocks = message::to_blocks(&pk.params, &msg)?;
    let mut rng = rng(args.seed);
    let blocks = blocks
        .iter()
        .map(|m| gpt::encrypt(&pk, m, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let count = blocks.len();
    let file = CiphertextFile {
        params: pk.params,
        message_len: msg.len() as u64,
        blocks,
    };
    write(
        &args.output,
        &formats::encode(&Artifact::Ciphertext(file), args.format),
    )?;
    Ok(format!("encrypted {} bytes in {count} blocks\n", msg.len()))
}

fn decrypt(args: &DecryptArgs) -> Result<String, CliError> {
    let sk = load_private(&args.key)?;
    let ct = load_ciphertext(&args.input)?;
    same_params(&sk.params, &ct.params)?;
    let blocks = ct
        .blocks
        .iter()
        .map(|c| gpt::decrypt(&sk, c))
        .collect::<Result<Vec<_>, _>>()?;
    let msg = message::from_blocks(&sk.params, &blocks, ct.message_len)?;
    write(&args.output, &msg)?;
    Ok(format!("decrypted {} bytes\n", msg.len()))
}

fn costs_json(c: &CostReport) -> Value {
    json!({
        "ourivski_johansson_1": c.ourivski_johansson_1,
        "ourivski_johansson_2": c.ourivski_johansson_2,
        "algebraic": c.algebraic,
        "brute_force": c.brute_force,
        "min_cost": c.min_cost(),
        "key_bits": c.key_bits,
    })
}

fn costs_text(out: &mut String, params: &GptParams, c: &CostReport) {
    let _ = writeln!(out, "public key size: {:.0} bits", params.public_key_bits());
    let _ = writeln!(out, "attack costs (log2 operations):");
    for (name, v) in [
        ("Ourivski-Johansson 1", c.ourivski_johansson_1),
        ("Ourivski-Johansson 2", c.ourivski_johansson_2),
        ("algebraic", c.algebraic),
        ("brute force", c.brute_force),
    ] {
        let _ = writeln!(out, "  {name:<22}{v:>8.2}");
    }
}

fn params_json(p: &GptParams) -> Value {
    json!({
        "q": p.ctx.q(),
        "N": p.ctx.degree(),
        "n": p.n,
        "k": p.k,
        "t": p.t(),
        "variant": p.variant.name(),
        "t1": p.t1,
        "t2": p.t2,
        "p": p.p,
        "m_cols": p.m_cols,
        "scrambler_mode": p.mode.name(),
        "s_ext": p.s_ext,
    })
}

fn params_text(out: &mut String, p: &GptParams) {
    let _ = writeln!(
        out,
        "parameters: q={} N={} n={} k={} t={} variant={} t1={} t2={} p={} m_cols={} mode={} s_ext={}",
        p.ctx.q(),
        p.ctx.degree(),
        p.n,
        p.k,
        p.t(),
        p.variant,
        p.t1,
        p.t2,
        p.p,
        p.m_cols,
        p.mode,
        p.s_ext
    );
}

fn distinguisher_json(r: &DistinguisherResult) -> Value {
    json!({
        "u": r.u,
        "rank": r.rank,
        "expected_random": r.expected_random,
        "verdict": r.verdict.to_string(),
    })
}

fn trials_json(s: &TrialSummary) -> Value {
    json!({
        "verdict": s.verdict.to_string(),
        "trials": s.trials.iter().map(distinguisher_json).collect::<Vec<_>>(),
    })
}

fn render(format: ReportFormat, text: String, value: Value) -> String {
    match format {
        ReportFormat::Text => text,
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("valid JSON");
            s.push('\n');
            s
        }
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let mut rng = rng(args.seed);
    if args.table {
        if let Some(p) = args.params.preset.as_deref().filter(|&p| p != "paper-28") {
            return Err(CliError::Param(format!(
                "the security table is defined for paper-28, not `{p}`"
            )));
        }
        let rows = reproduce_table(args.threshold, args.trials, &mut rng)?;
        return Ok(render(
            args.format,
            table_text(&rows, args.threshold),
            table_json(&rows, args.threshold),
        ));
    }
    if let Some(preset) = &args.simulate {
        let params = ParamArgs {
            preset: Some(preset.clone()),
            ..args.params.clone()
        }
        .resolve()?;
        let costs = cost_report(CostInputs::from(&params));
        let summary = distinguisher_trials(&params, args.u, args.trials, &mut rng)?;
        let status = security_status(costs.min_cost(), Some(summary.verdict), args.threshold);
        let mut text = String::new();
        params_text(&mut text, &params);
        costs_text(&mut text, &params, &costs);
        let ranks: Vec<String> = summary.trials.iter().map(|r| r.rank.to_string()).collect();
        let first = &summary.trials[0];
        let _ = writeln!(
            text,
            "distinguisher: u={} ranks [{}] of {} over {} fresh keys",
            first.u,
            ranks.join(", "),
            first.expected_random,
            summary.trials.len()
        );
        let _ = writeln!(text, "verdict: {}", summary.verdict);
        let _ = writeln!(text, "status: {status}");
        let value = json!({
            "parameters": params_json(&params),
            "costs": costs_json(&costs),
            "distinguisher": trials_json(&summary),
            "status": status.to_string(),
        });
        return Ok(render(args.format, text, value));
    }
    let (params, result) = match &args.key {
        Some(path) => {
            let pk = load_public(path)?;
            let result = overbeck_distinguish(&pk, args.u);
            (pk.params, Some(result))
        }
        None => (args.params.resolve()?, None),
    };
    let costs = cost_report(CostInputs::from(&params));
    let status = security_status(
        costs.min_cost(),
        result.as_ref().map(|r| r.verdict),
        args.threshold,
    );
    let mut text = String::new();
    params_text(&mut text, &params);
    costs_text(&mut text, &params, &costs);
    if let Some(r) = &result {
        let _ = writeln!(
            text,
            "distinguisher: u={} rank {} of {}: {}",
            r.u, r.rank, r.expected_random, r.verdict
        );
    }
    let _ = writeln!(text, "status: {status}");
    let value = json!({
        "parameters": params_json(&params),
        "public_key_bits": params.public_key_bits(),
        "costs": costs_json(&costs),
        "distinguisher": result.as_ref().map(distinguisher_json),
        "status": status.to_string(),
    });
    Ok(render(args.format, text, value))
}

const TABLE_NOTE: &str = "note: the published brute-force exponents are 24*t1, while q^(n*t1) at \
n = 28 gives 28*t1; both are shown, and the published values enter the status";

fn table_text(rows: &[TableRow], threshold: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "security of the (28, 14) Gabidulin system over F_2^28, t = 7 (threshold 2^{threshold:.0})"
    );
    let _ = writeln!(
        out,
        "{:<4}{:<19}{:<18}{:<12}{:<10}{:<19}{:<11}status",
        "t1", "scrambler", "attacks on PK", "BF table", "BF n*t1", "distinguisher", "published",
    );
    for row in rows {
        let t = &row.tabulated;
        let bf = t
            .brute_force_exponent
            .map_or("not needed".to_string(), |e| format!("2^{e}"));
        let _ = writeln!(
            out,
            "{:<4}{:<19}{:<18}{:<12}{:<10}{:<19}{:<11}{}",
            t.t1,
            t.mode.name(),
            t.public_key_attack,
            bf,
            format!("2^{:.0}", row.formula_exponent),
            row.distinguisher.verdict.to_string(),
            t.status.to_string(),
            row.status
        );
    }
    let agree = rows.iter().all(|r| r.status == r.tabulated.status);
    let _ = writeln!(
        out,
        "reproduced statuses {} the published table",
        if agree { "match" } else { "DIFFER FROM" }
    );
    let _ = writeln!(out, "{TABLE_NOTE}");
    out
}

fn table_json(rows: &[TableRow], threshold: f64) -> Value {
    json!({
        "threshold_bits": threshold,
        "rows": rows.iter().map(|row| {
            let t = &row.tabulated;
            json!({
                "t1": t.t1,
                "scrambler_mode": t.mode.name(),
                "public_key_attack": t.public_key_attack,
                "tabulated_brute_force_exponent": t.brute_force_exponent,
                "formula_brute_force_exponent": row.formula_exponent,
                "costs": costs_json(&row.costs),
                "distinguisher": trials_json(&row.distinguisher),
                "published_status": t.status.to_string(),
                "status": row.status.to_string(),
            })
        }).collect::<Vec<_>>(),
        "note": TABLE_NOTE,
    })
}

fn attack(args: &AttackArgs) -> Result<String, CliError> {
    let pk = load_public(&args.key)?;
    let result = overbeck_distinguish(&pk, args.u);
    let mut text = String::new();
    params_text(&mut text, &pk.params);
    let _ = writeln!(
        text,
        "distinguisher: u={} rank {} of {}: {}",
        result.u, result.rank, result.expected_random, result.verdict
    );
    let mut value = json!({
        "parameters": params_json(&pk.params),
        "distinguisher": distinguisher_json(&result),
    });
    if let (Some(ct_path), Some(out)) = (&args.ciphertext, &args.output) {
        let ct = load_ciphertext(ct_path)?;
        same_params(&pk.params, &ct.params)?;
        let bound = pk.params.error_rank().bound();
        let blocks = ct
            .blocks
            .iter()
            .map(|c| exhaustive_decrypt(&pk, c, bound))
            .collect::<Result<Vec<_>, _>>()?;
        let msg = message::from_blocks(&pk.params, &blocks, ct.message_len)?;
        write(out, &msg)?;
        let _ = writeln!(
            text,
            "exhaustive search recovered {} bytes into {}",
            msg.len(),
            out.display()
        );
        value["recovered_bytes"] = json!(msg.len());
    }
    Ok(render(args.format, text, value))
}

fn exhaustive_decrypt(
    pk: &GptPublicKey,
    c: &Ciphertext,
    bound: usize,
) -> Result<rankgpt::ExtVector, CliError> {
    let nearest = brute_force_decode_oracle(pk.ctx(), &pk.g_pub, &c.0)
        .map_err(|e| CliError::Param(e.to_string()))?;
    if nearest.distance > bound {
        return Err(CliError::Decode(format!(
            "nearest codeword is at rank distance {}, beyond the error bound {bound}",
            nearest.distance
        )));
    }
    match <[_; 1]>::try_from(nearest.minimizers) {
        Ok([(m, _)]) => Ok(m),
        Err(all) => Err(CliError::Decode(format!(
            "{} codewords tie at rank distance {}",
            all.len(),
            nearest.distance
        ))),
    }
}
