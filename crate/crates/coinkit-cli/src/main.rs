//! Command-line front end for the coinkit solvers: every fast algorithm,
//! verification against the independent oracles, and a CSV benchmark
//! harness with instrumented work counters.
//!
//! Exit codes: 0 success, 1 infeasible single target (printed as "-1") or
//! verification mismatch, 2 validation error (malformed input, unknown
//! algorithm, oracle budget).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coinkit::baseline::{
    dp_all_capacities_counted, dp_all_targets, dp_all_targets_counted, ImplicitCostAnswer,
};
use coinkit::heavy_light::{all_targets_t32_counted, all_targets_t43_counted};
use coinkit::knapsack::{
    algo2_all_capacities_counted, single_capacity_nu_counted, tsigma_all_capacities_counted,
};
use coinkit::single_target::min_coins_single_counted;
use coinkit::top_k::{algo1_all_targets_counted, tsigma_all_targets_counted};
use coinkit::word_break::{min_word_break_counted, naive_word_break};
use coinkit::{CoinSet, Cost, CostArray, KnapsackInstance, ProfitArray, WordBreakInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Default cap on oracle work (DP cells or byte comparisons) in `verify`.
const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "coinkit",
    version,
    about = "Exact change-making, unbounded-knapsack and word-break solvers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum coin count for every target 0..=t.
    CoinsAll {
        #[arg(long, value_enum, default_value_t = CoinsAllAlgo::T43)]
        algo: CoinsAllAlgo,
        #[command(flatten)]
        input: CoinInput,
        /// Largest target of the table.
        #[arg(long)]
        target: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Minimum coin count for one target.
    CoinsSingle {
        #[arg(long, value_enum, default_value_t = CoinsSingleAlgo::Fftu)]
        algo: CoinsSingleAlgo,
        #[command(flatten)]
        input: CoinInput,
        #[arg(long)]
        target: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Maximum profit for every capacity 0..=t (unbounded, at-most semantics).
    KnapsackAll {
        #[arg(long, value_enum, default_value_t = KnapAllAlgo::Algo2)]
        algo: KnapAllAlgo,
        /// File with one "weight profit" pair per line.
        #[arg(long, value_name = "FILE")]
        items: PathBuf,
        #[arg(long)]
        target: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Maximum profit for one capacity.
    KnapsackSingle {
        #[arg(long, value_enum, default_value_t = KnapSingleAlgo::Nu)]
        algo: KnapSingleAlgo,
        /// File with one "weight profit" pair per line.
        #[arg(long, value_name = "FILE")]
        items: PathBuf,
        #[arg(long)]
        target: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Fewest dictionary words concatenating to the whole text.
    Wordbreak {
        #[arg(long, value_enum, default_value_t = WordsAlgo::Fast)]
        algo: WordsAlgo,
        /// Text file; one trailing newline is ignored.
        #[arg(long, value_name = "FILE")]
        text: PathBuf,
        /// Dictionary file, one word per line; blank lines are skipped.
        #[arg(long, value_name = "FILE")]
        dict: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Run a fast algorithm and its oracle, report the first mismatch or OK.
    Verify {
        /// Problem whose solver is being checked.
        #[arg(long, value_enum)]
        problem: Problem,
        /// Algorithm name as accepted by the problem's own subcommand.
        #[arg(long)]
        algo: String,
        #[command(flatten)]
        input: CoinInput,
        #[arg(long, value_name = "FILE")]
        items: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        text: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        dict: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        target: u64,
        /// Cap on estimated oracle work (table cells / byte comparisons).
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        oracle_budget: u64,
        /// Bump one entry of the fast result before comparing (testing hook).
        #[arg(long, hide = true, value_name = "INDEX")]
        inject_fault: Option<usize>,
    },
    /// Time the coin solvers over generated instances; CSV on stdout.
    Bench {
        /// Comma-separated algorithms to measure.
        #[arg(long = "algo", value_delimiter = ',', required = true)]
        algos: Vec<BenchAlgo>,
        /// Comma-separated strictly ascending targets; omit for a
        /// header-only CSV.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u64>,
        /// Coin values drawn per instance; the largest is forced to
        /// --max-coin so the u column is stable.
        #[arg(long, default_value_t = 8)]
        coin_count: usize,
        /// Largest coin value.
        #[arg(long, default_value_t = 100)]
        max_coin: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct CoinInput {
    /// File of whitespace-separated positive coin values.
    #[arg(long, value_name = "FILE", conflicts_with = "inline")]
    coins: Option<PathBuf>,
    /// Coin values given directly, e.g. --inline "1 5 10 25".
    #[arg(long, value_name = "VALUES")]
    inline: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Problem {
    CoinsAll,
    CoinsSingle,
    KnapsackAll,
    KnapsackSingle,
    Wordbreak,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CoinsAllAlgo {
    /// Textbook dynamic program.
    Dp,
    /// Heavy/light split at t^(1/2).
    T32,
    /// Heavy/light split at t^(1/3).
    T43,
    /// Top-k scan over value-ranked coins.
    Algo1,
    /// (t*sigma)^(1/3) split between scan and sweep.
    Tsigma,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CoinsSingleAlgo {
    /// Halving recursion over counting windows.
    Fftu,
    /// DP prefix over [0, u^2) plus largest-coin reduction.
    Implicit,
    /// Full table, then one lookup.
    Dp,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KnapAllAlgo {
    Dp,
    /// Top-k scan over ratio-ranked items.
    Algo2,
    /// (t*sigma)^(1/3) split between scan and sweep.
    Tsigma,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KnapSingleAlgo {
    /// Windowed halving recursion plus best-ratio reduction.
    Nu,
    Dp,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum WordsAlgo {
    /// Scale tries with jump queries.
    Fast,
    /// Budgeted per-word comparison DP.
    Naive,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BenchAlgo {
    Dp,
    T32,
    T43,
    Algo1,
    Tsigma,
    Fftu,
}

impl BenchAlgo {
    fn name(self) -> &'static str {
        match self {
            BenchAlgo::Dp => "dp",
            BenchAlgo::T32 => "t32",
            BenchAlgo::T43 => "t43",
            BenchAlgo::Algo1 => "algo1",
            BenchAlgo::Tsigma => "tsigma",
            BenchAlgo::Fftu => "fftu",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::CoinsAll {
            algo,
            input,
            target,
            format,
        } => run_coins_all(algo, &input.load()?, target, format),
        Cmd::CoinsSingle {
            algo,
            input,
            target,
            format,
        } => run_coins_single(algo, &input.load()?, target, format),
        Cmd::KnapsackAll {
            algo,
            items,
            target,
            format,
        } => run_knapsack_all(algo, &load_items(&items)?, target, format),
        Cmd::KnapsackSingle {
            algo,
            items,
            target,
            format,
        } => run_knapsack_single(algo, &load_items(&items)?, target, format),
        Cmd::Wordbreak {
            algo,
            text,
            dict,
            format,
        } => run_wordbreak(algo, &load_words(&text, &dict)?, format),
        Cmd::Verify {
            problem,
            algo,
            input,
            items,
            text,
            dict,
            target,
            oracle_budget,
            inject_fault,
        } => verify(
            problem,
            &algo,
            &input,
            items.as_deref(),
            text.as_deref(),
            dict.as_deref(),
            target,
            oracle_budget,
            inject_fault,
        ),
        Cmd::Bench {
            algos,
            sizes,
            coin_count,
            max_coin,
            seed,
        } => bench(&algos, &sizes, coin_count, max_coin, seed),
    }
}

// ---------------------------------------------------------------------------
// Input loading with line/column diagnostics.

impl CoinInput {
    fn load(&self) -> Result<CoinSet, String> {
        match (&self.coins, &self.inline) {
            (Some(path), None) => {
                let src = read_text(path)?;
                let values = parse_positive_ints(&src, &path.display().to_string())?;
                CoinSet::new(values).map_err(|e| e.to_string())
            }
            (None, Some(src)) => {
                let values = parse_positive_ints(src, "inline")?;
                CoinSet::new(values).map_err(|e| e.to_string())
            }
            _ => Err("provide exactly one of --coins FILE or --inline VALUES".into()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// 1-based (line, column, token) triples of whitespace-separated tokens.
fn tokens_with_positions(src: &str) -> Vec<(usize, usize, &str)> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let mut rest = line;
        let mut consumed = 0usize;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail
                .find(char::is_whitespace)
                .unwrap_or(tail.len());
            out.push((ln + 1, consumed + start + 1, &tail[..len]));
            consumed += start + len;
            rest = &tail[len..];
        }
    }
    out
}

fn parse_positive_ints(src: &str, origin: &str) -> Result<Vec<u64>, String> {
    let mut values = Vec::new();
    for (ln, col, tok) in tokens_with_positions(src) {
        match tok.parse::<u64>() {
            Ok(v) if v > 0 => values.push(v),
            _ => {
                return Err(format!(
                    "{origin}:{ln}:{col}: expected positive integer, found {tok:?}"
                ))
            }
        }
    }
    Ok(values)
}

fn load_items(path: &Path) -> Result<KnapsackInstance, String> {
    let src = read_text(path)?;
    let origin = path.display().to_string();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let toks: Vec<(usize, usize, &str)> = tokens_with_positions(line)
            .into_iter()
            .map(|(_, col, t)| (ln + 1, col, t))
            .collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            return Err(format!(
                "{origin}:{}:{}: expected one \"weight profit\" pair per line",
                ln + 1,
                toks.get(2).map_or(1, |t| t.1)
            ));
        }
        let mut nums = [0u64; 2];
        for (slot, &(l, c, tok)) in toks.iter().enumerate() {
            match tok.parse::<u64>() {
                Ok(v) if v > 0 => nums[slot] = v,
                _ => {
                    return Err(format!(
                        "{origin}:{l}:{c}: expected positive integer, found {tok:?}"
                    ))
                }
            }
        }
        pairs.push((nums[0], nums[1]));
    }
    KnapsackInstance::new(pairs).map_err(|e| e.to_string())
}

fn load_words(text_path: &Path, dict_path: &Path) -> Result<WordBreakInstance, String> {
    let mut text =
        std::fs::read(text_path).map_err(|e| format!("{}: {e}", text_path.display()))?;
    if text.last() == Some(&b'\n') {
        text.pop();
        if text.last() == Some(&b'\r') {
            text.pop();
        }
    }
    let dict = std::fs::read(dict_path).map_err(|e| format!("{}: {e}", dict_path.display()))?;
    let words: Vec<Vec<u8>> = dict
        .split(|&b| b == b'\n')
        .map(|w| w.strip_suffix(b"\r").unwrap_or(w).to_vec())
        .filter(|w| !w.is_empty())
        .collect();
    WordBreakInstance::new(text, words).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Solver plumbing shared by run and verify.

fn coins_all_table(algo: CoinsAllAlgo, coins: &CoinSet, t: u64) -> (CostArray, u64) {
    match algo {
        CoinsAllAlgo::Dp => dp_all_targets_counted(coins, t),
        CoinsAllAlgo::T32 => all_targets_t32_counted(coins, t),
        CoinsAllAlgo::T43 => all_targets_t43_counted(coins, t),
        CoinsAllAlgo::Algo1 => algo1_all_targets_counted(coins, t),
        CoinsAllAlgo::Tsigma => tsigma_all_targets_counted(coins, t),
    }
}

fn coins_single_value(
    algo: CoinsSingleAlgo,
    coins: &CoinSet,
    t: u64,
) -> Result<Cost, String> {
    match algo {
        CoinsSingleAlgo::Fftu => Ok(min_coins_single_counted(coins, t).0),
        CoinsSingleAlgo::Dp => Ok(dp_all_targets(coins, t)[t as usize]),
        CoinsSingleAlgo::Implicit => {
            let usable = coins.up_to(t);
            if usable.is_empty() {
                return Ok(if t == 0 { Cost::ZERO } else { Cost::INF });
            }
            let pruned = CoinSet::new(usable.iter().copied()).map_err(|e| e.to_string())?;
            let u = pruned.max_value();
            let prefix_top = u
                .checked_mul(u)
                .ok_or_else(|| "implicit prefix table would overflow".to_string())?
                - 1;
            let prefix = dp_all_targets(&pruned, prefix_top);
            let answer = ImplicitCostAnswer::new(prefix, u).map_err(|e| e.to_string())?;
            Ok(answer.query(t))
        }
    }
}

fn knapsack_all_table(
    algo: KnapAllAlgo,
    inst: &KnapsackInstance,
    t: u64,
) -> Result<ProfitArray, String> {
    let r = match algo {
        KnapAllAlgo::Dp => dp_all_capacities_counted(inst, t),
        KnapAllAlgo::Algo2 => algo2_all_capacities_counted(inst, t),
        KnapAllAlgo::Tsigma => tsigma_all_capacities_counted(inst, t),
    };
    r.map(|(table, _)| table).map_err(|e| e.to_string())
}

fn knapsack_single_value(
    algo: KnapSingleAlgo,
    inst: &KnapsackInstance,
    t: u64,
) -> Result<u64, String> {
    match algo {
        KnapSingleAlgo::Nu => single_capacity_nu_counted(inst, t)
            .map(|(p, _)| p)
            .map_err(|e| e.to_string()),
        KnapSingleAlgo::Dp => dp_all_capacities_counted(inst, t)
            .map(|(table, _)| table[t as usize])
            .map_err(|e| e.to_string()),
    }
}

fn wordbreak_table(algo: WordsAlgo, inst: &WordBreakInstance) -> Result<CostArray, String> {
    match algo {
        WordsAlgo::Fast => min_word_break_counted(inst)
            .map(|(s, _)| s)
            .map_err(|e| e.to_string()),
        WordsAlgo::Naive => naive_word_break(inst).map_err(|e| e.to_string()),
    }
}

// ---------------------------------------------------------------------------
// Output.

fn count_json(c: Cost) -> serde_json::Value {
    match c.value() {
        Some(v) => json!(v),
        None => serde_json::Value::Null,
    }
}

fn print_table_json(algo: &str, rows: Vec<serde_json::Value>, params: serde_json::Value) {
    println!("{}", json!({ "targets": rows, "algo": algo, "params": params }));
}

fn run_coins_all(
    algo: CoinsAllAlgo,
    coins: &CoinSet,
    t: u64,
    format: OutFormat,
) -> Result<ExitCode, String> {
    let (table, _) = coins_all_table(algo, coins, t);
    match format {
        OutFormat::Text => {
            let mut out = String::new();
            for (j, c) in table.iter().enumerate() {
                out.push_str(&format!("{j} {}\n", c.to_signed()));
            }
            print!("{out}");
        }
        OutFormat::Json => {
            let rows = table
                .iter()
                .enumerate()
                .map(|(j, c)| json!({ "j": j, "count": count_json(*c) }))
                .collect();
            let name = algo_name_coins_all(algo);
            print_table_json(
                name,
                rows,
                json!({ "target": t, "n": coins.n(), "u": coins.max_value() }),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_coins_single(
    algo: CoinsSingleAlgo,
    coins: &CoinSet,
    t: u64,
    format: OutFormat,
) -> Result<ExitCode, String> {
    let c = coins_single_value(algo, coins, t)?;
    match format {
        OutFormat::Text => println!("{}", c.to_signed()),
        OutFormat::Json => print_table_json(
            algo_name_coins_single(algo),
            vec![json!({ "j": t, "count": count_json(c) })],
            json!({ "target": t, "n": coins.n(), "u": coins.max_value() }),
        ),
    }
    Ok(if c.is_finite() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_knapsack_all(
    algo: KnapAllAlgo,
    inst: &KnapsackInstance,
    t: u64,
    format: OutFormat,
) -> Result<ExitCode, String> {
    let table = knapsack_all_table(algo, inst, t)?;
    match format {
        OutFormat::Text => {
            let mut out = String::new();
            for (j, p) in table.as_slice().iter().enumerate() {
                out.push_str(&format!("{j} {p}\n"));
            }
            print!("{out}");
        }
        OutFormat::Json => {
            let rows = table
                .as_slice()
                .iter()
                .enumerate()
                .map(|(j, p)| json!({ "j": j, "count": p }))
                .collect();
            print_table_json(
                algo_name_knap_all(algo),
                rows,
                json!({ "target": t, "n": inst.n(), "u": inst.max_weight() }),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_knapsack_single(
    algo: KnapSingleAlgo,
    inst: &KnapsackInstance,
    t: u64,
    format: OutFormat,
) -> Result<ExitCode, String> {
    let p = knapsack_single_value(algo, inst, t)?;
    match format {
        OutFormat::Text => println!("{p}"),
        OutFormat::Json => print_table_json(
            algo_name_knap_single(algo),
            vec![json!({ "j": t, "count": p })],
            json!({ "target": t, "n": inst.n(), "u": inst.max_weight() }),
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_wordbreak(
    algo: WordsAlgo,
    inst: &WordBreakInstance,
    format: OutFormat,
) -> Result<ExitCode, String> {
    let table = wordbreak_table(algo, inst)?;
    let n = inst.text().len();
    let c = table[n];
    match format {
        OutFormat::Text => println!("{}", c.to_signed()),
        OutFormat::Json => print_table_json(
            match algo {
                WordsAlgo::Fast => "fast",
                WordsAlgo::Naive => "naive",
            },
            vec![json!({ "j": n, "count": count_json(c) })],
            json!({ "n": n, "m": inst.total_word_len() }),
        ),
    }
    Ok(if c.is_finite() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn algo_name_coins_all(a: CoinsAllAlgo) -> &'static str {
    match a {
        CoinsAllAlgo::Dp => "dp",
        CoinsAllAlgo::T32 => "t32",
        CoinsAllAlgo::T43 => "t43",
        CoinsAllAlgo::Algo1 => "algo1",
        CoinsAllAlgo::Tsigma => "tsigma",
    }
}

fn algo_name_coins_single(a: CoinsSingleAlgo) -> &'static str {
    match a {
        CoinsSingleAlgo::Fftu => "fftu",
        CoinsSingleAlgo::Implicit => "implicit",
        CoinsSingleAlgo::Dp => "dp",
    }
}

fn algo_name_knap_all(a: KnapAllAlgo) -> &'static str {
    match a {
        KnapAllAlgo::Dp => "dp",
        KnapAllAlgo::Algo2 => "algo2",
        KnapAllAlgo::Tsigma => "tsigma",
    }
}

fn algo_name_knap_single(a: KnapSingleAlgo) -> &'static str {
    match a {
        KnapSingleAlgo::Nu => "nu",
        KnapSingleAlgo::Dp => "dp",
    }
}

// ---------------------------------------------------------------------------
// Verification against oracles.

#[allow(clippy::too_many_arguments)]
fn verify(
    problem: Problem,
    algo: &str,
    coin_input: &CoinInput,
    items: Option<&Path>,
    text: Option<&Path>,
    dict: Option<&Path>,
    target: u64,
    budget: u64,
    fault: Option<usize>,
) -> Result<ExitCode, String> {
    let (labels, fast, oracle) = match problem {
        Problem::CoinsAll => {
            let coins = coin_input.load()?;
            check_budget((coins.n() as u64).max(1) * (target + 1), budget)?;
            let a = parse_algo::<CoinsAllAlgo>(algo, "coins-all")?;
            let fast = coins_all_table(a, &coins, target).0;
            let oracle = dp_all_targets(&coins, target);
            (
                (0..=target).collect(),
                signed(&fast),
                signed(&oracle),
            )
        }
        Problem::CoinsSingle => {
            let coins = coin_input.load()?;
            check_budget((coins.n() as u64).max(1) * (target + 1), budget)?;
            let a = parse_algo::<CoinsSingleAlgo>(algo, "coins-single")?;
            let fast = coins_single_value(a, &coins, target)?;
            let oracle = dp_all_targets(&coins, target)[target as usize];
            (
                vec![target],
                vec![fast.to_signed() as i128],
                vec![oracle.to_signed() as i128],
            )
        }
        Problem::KnapsackAll => {
            let inst = load_items(items.ok_or("--items FILE is required")?)?;
            check_budget((inst.n() as u64).max(1) * (target + 1), budget)?;
            let a = parse_algo::<KnapAllAlgo>(algo, "knapsack-all")?;
            let fast = knapsack_all_table(a, &inst, target)?;
            let oracle = knapsack_all_table(KnapAllAlgo::Dp, &inst, target)?;
            (
                (0..=target).collect(),
                fast.as_slice().iter().map(|&p| p as i128).collect(),
                oracle.as_slice().iter().map(|&p| p as i128).collect(),
            )
        }
        Problem::KnapsackSingle => {
            let inst = load_items(items.ok_or("--items FILE is required")?)?;
            check_budget((inst.n() as u64).max(1) * (target + 1), budget)?;
            let a = parse_algo::<KnapSingleAlgo>(algo, "knapsack-single")?;
            let fast = knapsack_single_value(a, &inst, target)?;
            let oracle = knapsack_single_value(KnapSingleAlgo::Dp, &inst, target)?;
            (vec![target], vec![fast as i128], vec![oracle as i128])
        }
        Problem::Wordbreak => {
            let inst = load_words(
                text.ok_or("--text FILE is required")?,
                dict.ok_or("--dict FILE is required")?,
            )?;
            let n = inst.text().len() as u64;
            check_budget(n.saturating_mul(inst.total_word_len()), budget)?;
            let a = parse_algo::<WordsAlgo>(algo, "wordbreak")?;
            let fast = wordbreak_table(a, &inst)?;
            let oracle = naive_word_break(&inst).map_err(|e| e.to_string())?;
            (
                (0..=n).collect(),
                signed(&fast),
                signed(&oracle),
            )
        }
    };

    let mut fast = fast;
    if let Some(i) = fault {
        if i < fast.len() {
            fast[i] += 1;
        }
    }
    for ((label, a), b) in labels.iter().zip(&fast).zip(&oracle) {
        if a != b {
            println!("mismatch at {label}: fast={a} oracle={b}");
            return Ok(ExitCode::from(1));
        }
    }
    println!("OK");
    Ok(ExitCode::SUCCESS)
}

fn signed(table: &CostArray) -> Vec<i128> {
    table.iter().map(|c| c.to_signed() as i128).collect()
}

fn check_budget(estimate: u64, budget: u64) -> Result<(), String> {
    if estimate > budget {
        return Err(format!("oracle budget exceeded: {estimate} > {budget}"));
    }
    Ok(())
}

fn parse_algo<A: ValueEnum>(name: &str, problem: &str) -> Result<A, String> {
    A::from_str(name, false).map_err(|_| format!("unknown algorithm {name:?} for {problem}"))
}

// ---------------------------------------------------------------------------
// Benchmark harness.

fn bench(
    algos: &[BenchAlgo],
    sizes: &[u64],
    coin_count: usize,
    max_coin: u64,
    seed: u64,
) -> Result<ExitCode, String> {
    if coin_count == 0 {
        return Err("--coin-count must be at least 1".into());
    }
    if max_coin == 0 {
        return Err("--max-coin must be at least 1".into());
    }
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err("--sizes must be strictly ascending".into());
    }
    println!("algo,n,t,u,sigma,wall_nanos,work_counter");
    let cells: Vec<(BenchAlgo, u64)> = sizes
        .iter()
        .flat_map(|&t| algos.iter().map(move |&a| (a, t)))
        .collect();
    if cells.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    let rows: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; cells.len()]);
    let next = AtomicUsize::new(0);
    let workers = bench_threads().min(cells.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let (algo, t) = cells[i];
                let row = bench_cell(algo, t, coin_count, max_coin, seed);
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });
    let mut out = String::new();
    for row in rows.into_inner().unwrap() {
        out.push_str(&row.expect("all cells computed"));
        out.push('\n');
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

/// Instances depend only on (seed, t), so every algorithm at a given size
/// sees the same coins and ratio trends across algorithms are meaningful.
fn bench_cell(algo: BenchAlgo, t: u64, coin_count: usize, max_coin: u64, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut values = vec![max_coin];
    for _ in 1..coin_count {
        values.push(rng.gen_range(1..=max_coin));
    }
    let coins = CoinSet::new(values).expect("values are positive");
    let (n, u, sigma) = (coins.n(), coins.max_value(), coins.sum());
    let start = Instant::now();
    let work = match algo {
        BenchAlgo::Dp => dp_all_targets_counted(&coins, t).1,
        BenchAlgo::T32 => all_targets_t32_counted(&coins, t).1,
        BenchAlgo::T43 => all_targets_t43_counted(&coins, t).1,
        BenchAlgo::Algo1 => algo1_all_targets_counted(&coins, t).1,
        BenchAlgo::Tsigma => tsigma_all_targets_counted(&coins, t).1,
        BenchAlgo::Fftu => min_coins_single_counted(&coins, t).1,
    };
    let wall = start.elapsed().as_nanos();
    format!("{},{n},{t},{u},{sigma},{wall},{work}", algo.name())
}

fn bench_threads() -> usize {
    std::env::var("COINKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&k| k > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
}
