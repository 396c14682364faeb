use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use ybe_fox::foxcalc::fox_derivative;
use ybe_fox::freegroup::{Alphabet, FreeWord};
use ybe_fox::models::io::{export_solution, parse_export, parse_model};
use ybe_fox::models::presets::parse_preset;
use ybe_fox::models::{
    check_bijective, check_sybe, check_sybe_verbose, extended_solution,
    extended_solution_unchecked, Bijectivity, Carrier, DecompositionReport, ExtendedSolution,
    FiniteGroup, GModule, SquareMap, SybeVerdict, DEFAULT_TRIPLE_BUDGET,
};
use ybe_fox::wada::{
    derived_coefficients, rack_check, verify_all, verify_braid_relations, verify_lemma1,
    wada_catalog, RackReport, RelationReport, WadaPair,
};

use crate::{parse_range, Cli, Command, Format, Mode, SolutionSource, EXIT_FAIL, EXIT_PASS};

type CmdResult<T> = Result<T, String>;

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    writeln!(out, "{text}").map_err(|e| e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult<i32> {
    let fmt = cli.format;
    match &cli.command {
        Command::Derive {
            word,
            generator,
            gens,
        } => derive(fmt, out, word, generator, gens),
        Command::Verify { words, mode } => verify(fmt, out, words, *mode),
        Command::Catalog { m } => catalog(fmt, out, m),
        Command::Build { source, out: path } => build(fmt, out, source, path.as_deref()),
        Command::Check {
            file,
            source,
            verbose,
            budget,
        } => check(
            fmt,
            out,
            file.as_deref(),
            source,
            *verbose,
            budget.unwrap_or(DEFAULT_TRIPLE_BUDGET),
        ),
        Command::ExportReport {
            source,
            budget,
            out: path,
        } => export_report(
            out,
            source,
            budget.unwrap_or(DEFAULT_TRIPLE_BUDGET),
            path.as_deref(),
        ),
    }
}

#[derive(Serialize)]
struct DeriveOutput<'a> {
    word: String,
    generator: &'a str,
    derivative: String,
}

fn derive(
    fmt: Format,
    out: &mut dyn Write,
    word: &str,
    generator: &str,
    gens: &str,
) -> CmdResult<i32> {
    let alphabet = Alphabet::new(gens.split(',').map(str::trim)).map_err(|e| e.to_string())?;
    let w = FreeWord::parse(word, &alphabet).map_err(|e| format!("{e} in {word:?}"))?;
    let i = alphabet
        .index_of(generator)
        .ok_or_else(|| format!("unknown generator {generator:?}; declared: {gens}"))?;
    let d = fox_derivative(&w, i).map_err(|e| e.to_string())?;
    match fmt {
        Format::Human => emit(out, &format!("{d}\n"))?,
        Format::Structured => emit_json(
            out,
            &DeriveOutput {
                word: w.to_string(),
                generator,
                derivative: d.to_string(),
            },
        )?,
    }
    Ok(EXIT_PASS)
}

fn parse_pair_args(words: &[String]) -> CmdResult<WadaPair> {
    match words {
        [joined] => WadaPair::parse_joined(joined),
        [u, v] => WadaPair::parse(u, v),
        _ => unreachable!("clap enforces one or two words"),
    }
    .map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct VerifyOutput {
    pair: String,
    mode: &'static str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    relations: Option<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rack: Option<RackReport>,
}

fn verify(fmt: Format, out: &mut dyn Write, words: &[String], mode: Mode) -> CmdResult<i32> {
    let p = parse_pair_args(words)?;
    let (relations, rack) = match mode {
        Mode::Braid => (Some(verify_braid_relations(&p)), None),
        Mode::Lemma1 => (Some(verify_lemma1(&p)), None),
        Mode::All => (Some(verify_all(&p)), Some(rack_check(&p))),
        Mode::Rack => (None, Some(rack_check(&p))),
    };
    // Rack rows only decide the outcome when they are what was asked for.
    let passed = match (&relations, &rack) {
        (Some(r), _) => r.all_hold(),
        (None, Some(k)) => k.u_is_y && k.all_hold(),
        (None, None) => unreachable!(),
    };
    let mode_name = match mode {
        Mode::Braid => "braid",
        Mode::Lemma1 => "lemma1",
        Mode::Rack => "rack",
        Mode::All => "all",
    };
    match fmt {
        Format::Human => {
            let mut text = format!("pair\t{}\n", p.display_name());
            if let Some(r) = &relations {
                text.push_str(&r.render_text());
            }
            if let Some(k) = &rack {
                text.push_str(&k.render_text());
            }
            text.push_str(&format!("result\t{}\n", verdict_word(passed)));
            emit(out, &text)?;
        }
        Format::Structured => emit_json(
            out,
            &VerifyOutput {
                pair: p.display_name(),
                mode: mode_name,
                passed,
                relations,
                rack,
            },
        )?,
    }
    Ok(exit_for(passed))
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    label: String,
    u: String,
    v: String,
    braid: &'static str,
}

fn catalog(fmt: Format, out: &mut dyn Write, m: &str) -> CmdResult<i32> {
    let range =
        parse_range(m).ok_or_else(|| format!("expected a range a..b with a <= b, got {m:?}"))?;
    let entries: Vec<CatalogEntry> = wada_catalog(range)
        .into_iter()
        .map(|p| CatalogEntry {
            label: p.label.clone().unwrap_or_default(),
            u: p.u.to_string(),
            v: p.v.to_string(),
            braid: verdict_word(verify_braid_relations(&p).all_hold()),
        })
        .collect();
    let passed = entries.iter().all(|e| e.braid == "PASS");
    match fmt {
        Format::Human => {
            let mut text = String::new();
            for e in &entries {
                text.push_str(&format!(
                    "{}\t{},{}\tbraid={}\n",
                    e.label, e.u, e.v, e.braid
                ));
            }
            emit(out, &text)?;
        }
        Format::Structured => emit_json(out, &entries)?,
    }
    Ok(exit_for(passed))
}

struct Model {
    name: String,
    group: FiniteGroup,
    module: GModule,
    pair: Option<WadaPair>,
}

fn read_file(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> CmdResult<()> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn load_model(source: &SolutionSource) -> CmdResult<Model> {
    if let Some(name) = &source.preset {
        let (group, module) = parse_preset(name).map_err(|e| e.to_string())?;
        return Ok(Model {
            name: name.clone(),
            group,
            module,
            pair: None,
        });
    }
    if let Some(path) = &source.model_file {
        let text = read_file(path)?;
        let m = parse_model(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(Model {
            name: path.display().to_string(),
            group: m.group,
            module: m.module,
            pair: m.pair,
        });
    }
    Err("a model is required: pass --preset or --model-file".to_string())
}

fn load_solution(source: &SolutionSource) -> CmdResult<ExtendedSolution> {
    let model = load_model(source)?;
    let pair = match (&source.pair, model.pair) {
        (Some(text), _) => WadaPair::parse_joined(text).map_err(|e| e.to_string())?,
        (None, Some(p)) => p,
        (None, None) => return Err("a pair is required: pass --pair u,v".to_string()),
    };
    let build = if source.unchecked {
        extended_solution_unchecked
    } else {
        extended_solution
    };
    build(&pair, &model.group, &model.module, model.name).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct BuildOutput {
    pair: String,
    model: String,
    carrier: Carrier,
    entries: usize,
    out: String,
}

fn build(
    fmt: Format,
    out: &mut dyn Write,
    source: &SolutionSource,
    path: Option<&Path>,
) -> CmdResult<i32> {
    let sol = load_solution(source)?;
    let text = export_solution(&sol);
    let Some(path) = path else {
        emit(out, &text)?;
        return Ok(EXIT_PASS);
    };
    write_file(path, &text)?;
    let n = sol.carrier.size();
    match fmt {
        Format::Human => emit(
            out,
            &format!("wrote {} entries ({n}x{n}) to {}\n", n * n, path.display()),
        )?,
        Format::Structured => emit_json(
            out,
            &BuildOutput {
                pair: sol.pair.display_name(),
                model: sol.model.clone(),
                carrier: sol.carrier,
                entries: n * n,
                out: path.display().to_string(),
            },
        )?,
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct WitnessPoints {
    input: [String; 3],
    lhs: [String; 3],
    rhs: [String; 3],
}

#[derive(Serialize)]
struct CheckOutput {
    source: String,
    carrier: Carrier,
    sybe: SybeVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_points: Option<WitnessPoints>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<DecompositionReport>,
    bijectivity: Bijectivity,
}

fn point_text(carrier: &Carrier, index: usize) -> String {
    let p = carrier.decode(index);
    let mut s = p.g.to_string();
    for x in p.vec {
        s.push(' ');
        s.push_str(&x.to_string());
    }
    s
}

fn run_check(
    source_name: String,
    carrier: Carrier,
    map: &SquareMap,
    sol: Option<&ExtendedSolution>,
    budget: u64,
) -> CmdResult<CheckOutput> {
    let (sybe, decomposition) = match sol {
        Some(sol) => {
            let v = check_sybe_verbose(sol, budget).map_err(|e| e.to_string())?;
            (v.verdict, Some(v.decomposition))
        }
        None => (check_sybe(map, budget).map_err(|e| e.to_string())?, None),
    };
    let pts = |t: [usize; 3]| t.map(|i| point_text(&carrier, i));
    let witness_points = sybe.witness().map(|w| WitnessPoints {
        input: pts(w.input),
        lhs: pts(w.lhs),
        rhs: pts(w.rhs),
    });
    Ok(CheckOutput {
        source: source_name,
        carrier,
        bijectivity: check_bijective(map),
        sybe,
        witness_points,
        decomposition,
    })
}

fn render_check(c: &CheckOutput) -> String {
    let mut s = format!("source\t{}\n", c.source);
    s.push_str(&format!(
        "carrier\t|G|={} m={} k={} size={}\n",
        c.carrier.order,
        c.carrier.modulus,
        c.carrier.rank,
        c.carrier.size()
    ));
    match &c.sybe {
        SybeVerdict::Pass { triples } => s.push_str(&format!("sybe\tPASS\t{triples} triples\n")),
        SybeVerdict::Fail { triples, witness } => {
            s.push_str(&format!("sybe\tFAIL\t{triples} triples\n"));
            let w = c.witness_points.as_ref().expect("witness points");
            s.push_str(&format!(
                "witness\t{:?}\t({})\n",
                witness.input,
                w.input.join(" | ")
            ));
            s.push_str(&format!(
                "lhs\t{:?}\t({})\n",
                witness.lhs,
                w.lhs.join(" | ")
            ));
            s.push_str(&format!(
                "rhs\t{:?}\t({})\n",
                witness.rhs,
                w.rhs.join(" | ")
            ));
        }
    }
    if let Some(d) = &c.decomposition {
        s.push_str(&format!(
            "decomposition\t{}\t{} triples\n",
            verdict_word(d.all_equal()),
            d.triples
        ));
        s.push_str(&format!(
            "mismatches\tgroup={} A={} B={} C={}\n",
            d.group_mismatches, d.a_mismatches, d.b_mismatches, d.c_mismatches
        ));
        s.push_str(&format!(
            "consistency\tdisagreements={} table={}\n",
            d.disagreements, d.table_mismatches
        ));
        if let Some(t) = d.first_mismatch {
            s.push_str(&format!("first-mismatch\t{t:?}\n"));
        }
    }
    match &c.bijectivity {
        Bijectivity::Bijective => s.push_str("bijective\tYES\n"),
        Bijectivity::NotBijective {
            first,
            second,
            image,
        } => s.push_str(&format!(
            "bijective\tNO\t{first:?} and {second:?} both map to {image:?}\n"
        )),
    }
    s
}

fn check(
    fmt: Format,
    out: &mut dyn Write,
    file: Option<&Path>,
    source: &SolutionSource,
    verbose: bool,
    budget: u64,
) -> CmdResult<i32> {
    let result = match file {
        Some(path) => {
            if !source.is_empty() {
                return Err("pass either an export file or --pair with a model, not both".into());
            }
            if verbose {
                return Err(
                    "--verbose needs the pair and model (--pair with --preset or --model-file)"
                        .into(),
                );
            }
            let text = read_file(path)?;
            let table = parse_export(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            run_check(
                path.display().to_string(),
                table.carrier,
                &table.map,
                None,
                budget,
            )?
        }
        None => {
            let sol = load_solution(source)?;
            let name = format!("{} on {}", sol.pair.display_name(), sol.model);
            run_check(name, sol.carrier, &sol.map, verbose.then_some(&sol), budget)?
        }
    };
    match fmt {
        Format::Human => emit(out, &render_check(&result))?,
        Format::Structured => emit_json(out, &result)?,
    }
    let ok = result.sybe.passed()
        && result
            .decomposition
            .as_ref()
            .is_none_or(DecompositionReport::all_equal);
    Ok(exit_for(ok))
}

#[derive(Serialize)]
struct Coefficients {
    u1: String,
    u2: String,
    v1: String,
    v2: String,
}

#[derive(Serialize)]
struct FullReport {
    pair: String,
    model: String,
    coefficients: Coefficients,
    relations: RelationReport,
    rack: RackReport,
    check: CheckOutput,
    passed: bool,
}

fn export_report(
    out: &mut dyn Write,
    source: &SolutionSource,
    budget: u64,
    path: Option<&Path>,
) -> CmdResult<i32> {
    let sol = load_solution(source)?;
    let c = derived_coefficients(&sol.pair);
    let relations = verify_all(&sol.pair);
    let name = format!("{} on {}", sol.pair.display_name(), sol.model);
    let check = run_check(name, sol.carrier, &sol.map, Some(&sol), budget)?;
    let passed = relations.all_hold()
        && check.sybe.passed()
        && check
            .decomposition
            .as_ref()
            .is_none_or(DecompositionReport::all_equal);
    let report = FullReport {
        pair: sol.pair.display_name(),
        model: sol.model.clone(),
        coefficients: Coefficients {
            u1: c.u1.to_string(),
            u2: c.u2.to_string(),
            v1: c.v1.to_string(),
            v2: c.v2.to_string(),
        },
        rack: rack_check(&sol.pair),
        relations,
        check,
        passed,
    };
    match path {
        Some(path) => {
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            write_file(path, &(text + "\n"))?;
            emit(out, &format!("wrote report to {}\n", path.display()))?;
        }
        None => emit_json(out, &report)?,
    }
    Ok(exit_for(passed))
}
