use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use epistream::dump::{dump_tree, format_entry};
use epistream::stream::{
    generate_synthetic, read_itemset_stream, read_numeric_series, sax_discretize, write_itemset_stream, Dictionary,
    GenConfig, Normalization, SaxConfig,
};
use epistream::{mine_batch, Itemset, MinerState, Pattern, PatternEntry, PatternTree, Window};

use crate::report::{RunReport, SlideRecord};
use crate::{DiscretizeArgs, Emit, GenArgs, MineArgs, Mode, RunArgs};

const EXIT_TIMEOUT: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => {
            Box::new(BufWriter::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_report(report: &RunReport, path: Option<&PathBuf>) -> Result<()> {
    if let Some(path) = path {
        let mut file = BufWriter::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?);
        report.write_csv(&mut file)?;
        file.flush()?;
    }
    Ok(())
}

fn budget(seconds: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(seconds).map_err(|_| anyhow::anyhow!("invalid --timeout {seconds}"))
}

/// Re-mines the whole window on demand.
struct BatchMiner {
    window: Window,
    tree: PatternTree,
    window_size: usize,
}

impl BatchMiner {
    fn new(window_size: usize, sigma: usize) -> Self {
        BatchMiner { window: Window::new(1), tree: PatternTree::new(sigma), window_size }
    }

    /// Returns whether the oldest itemset had to make room.
    fn push(&mut self, itemset: Itemset) -> bool {
        let full = self.window.len() >= self.window_size;
        if full {
            self.window.pop_front();
        }
        self.window.push_back(itemset);
        full
    }

    fn remine(&mut self) {
        self.tree = mine_batch(&self.window, self.tree.sigma());
    }
}

fn emit_window(out: &mut dyn Write, window: &Window, tree: &PatternTree, dictionary: &Dictionary) -> Result<()> {
    writeln!(out, "# window {}-{}", window.start(), window.end().unwrap_or(window.start()))?;
    out.write_all(dump_tree(tree, dictionary).as_bytes())?;
    Ok(())
}

fn record(miner: &'static str, slide: usize, window: &Window, tree: &PatternTree, elapsed: Duration) -> SlideRecord {
    SlideRecord {
        miner,
        slide,
        window_start: window.start(),
        window_end: window.end().unwrap_or(window.start()),
        elapsed,
        cumulative: elapsed,
        node_count: tree.node_count(),
        occurrence_count: tree.occurrence_count(),
        dump: None,
    }
}

pub fn mine(args: MineArgs) -> Result<ExitCode> {
    let run = &args.run;
    let started = Instant::now();
    let budget = budget(run.timeout)?;
    let source = read_itemset_stream(&read_input(&run.input)?)?;
    let emit = run.emit.unwrap_or(Emit::Final);
    let (ws, sigma) = (run.window as usize, run.sigma as usize);
    let miner = match args.mode {
        Mode::Incremental => "incremental",
        Mode::Batch => "batch",
    };

    let mut out = output(None)?;
    let mut report = RunReport::default();
    let mut incremental = MinerState::new(ws, sigma);
    let mut batch = BatchMiner::new(ws, sigma);
    let mut cumulative = Duration::ZERO;
    let mut slides = 0;

    for itemset in source.itemsets.iter().cloned() {
        let t = Instant::now();
        let slid = match args.mode {
            Mode::Incremental => {
                let slid = incremental.is_warm();
                incremental.slide(itemset);
                slid
            }
            Mode::Batch => {
                let slid = batch.push(itemset);
                if slid {
                    batch.remine();
                }
                slid
            }
        };
        let elapsed = t.elapsed();
        if slid {
            slides += 1;
            cumulative += elapsed;
            let (window, tree) = match args.mode {
                Mode::Incremental => (incremental.window(), incremental.tree()),
                Mode::Batch => (&batch.window, &batch.tree),
            };
            let mut rec = record(miner, slides, window, tree, elapsed);
            rec.cumulative = cumulative;
            if emit == Emit::EachSlide {
                emit_window(&mut out, window, tree, &source.dictionary)?;
                rec.dump = Some("stdout".into());
            }
            report.records.push(rec);
        }
        if started.elapsed() > budget {
            report.timed_out = true;
            break;
        }
    }

    if report.timed_out {
        out.flush()?;
        write_report(&report, run.report.as_ref())?;
        eprintln!("error: timed out after {:?} ({slides} slides done)", started.elapsed());
        return Ok(ExitCode::from(EXIT_TIMEOUT));
    }
    if args.mode == Mode::Batch && slides == 0 {
        batch.remine();
    }
    let (window, tree) = match args.mode {
        Mode::Incremental => (incremental.window(), incremental.tree()),
        Mode::Batch => (&batch.window, &batch.tree),
    };
    match emit {
        Emit::Final => out.write_all(dump_tree(tree, &source.dictionary).as_bytes())?,
        Emit::EachSlide if slides == 0 => emit_window(&mut out, window, tree, &source.dictionary)?,
        _ => {}
    }
    out.flush()?;
    write_report(&report, run.report.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

/// Patterns present on one side only, and patterns whose occurrence
/// lists differ.
fn diff(incremental: &PatternTree, batch: &PatternTree, dictionary: &Dictionary) -> Vec<String> {
    let left: BTreeMap<Pattern, PatternEntry> =
        incremental.enumerate().into_iter().map(|e| (e.pattern.clone(), e)).collect();
    let right: BTreeMap<Pattern, PatternEntry> =
        batch.enumerate().into_iter().map(|e| (e.pattern.clone(), e)).collect();
    let mut lines = Vec::new();
    for (pattern, entry) in &right {
        match left.get(pattern) {
            None => lines.push(format!("missing from incremental: {}", format_entry(entry, dictionary))),
            Some(other) if other != entry => {
                lines.push(format!("incremental: {}", format_entry(other, dictionary)));
                lines.push(format!("batch:       {}", format_entry(entry, dictionary)));
            }
            Some(_) => {}
        }
    }
    for (pattern, entry) in &left {
        if !right.contains_key(pattern) {
            lines.push(format!("extra in incremental: {}", format_entry(entry, dictionary)));
        }
    }
    lines
}

pub fn compare(run: RunArgs) -> Result<ExitCode> {
    let started = Instant::now();
    let budget = budget(run.timeout)?;
    let source = read_itemset_stream(&read_input(&run.input)?)?;
    let emit = run.emit.unwrap_or(Emit::None);
    let (ws, sigma) = (run.window as usize, run.sigma as usize);

    let mut out = output(None)?;
    let mut report = RunReport::default();
    let mut incremental = MinerState::new(ws, sigma);
    let mut batch = BatchMiner::new(ws, sigma);
    let (mut inc_total, mut batch_total) = (Duration::ZERO, Duration::ZERO);
    let (mut compared, mut slides, mut parity_failures) = (0usize, 0usize, 0usize);

    for itemset in source.itemsets.iter().cloned() {
        let slid = incremental.is_warm();
        let t = Instant::now();
        incremental.slide(itemset.clone());
        let inc_elapsed = t.elapsed();
        let t = Instant::now();
        batch.push(itemset);
        batch.remine();
        let batch_elapsed = t.elapsed();
        compared += 1;

        let (itree, btree) = (incremental.tree(), &batch.tree);
        if itree.node_count() != btree.node_count() || itree.occurrence_count() != btree.occurrence_count() {
            parity_failures += 1;
        }
        if itree.enumerate() != btree.enumerate() {
            let window = incremental.window();
            writeln!(out, "# mismatch in window {}-{}", window.start(), window.end().unwrap_or(window.start()))?;
            for line in diff(itree, btree, &source.dictionary) {
                writeln!(out, "# {line}")?;
            }
            out.flush()?;
            write_report(&report, run.report.as_ref())?;
            return Ok(ExitCode::from(EXIT_MISMATCH));
        }
        if slid {
            slides += 1;
            inc_total += inc_elapsed;
            batch_total += batch_elapsed;
            let mut inc_rec = record("incremental", slides, incremental.window(), itree, inc_elapsed);
            inc_rec.cumulative = inc_total;
            let mut batch_rec = record("batch", slides, &batch.window, btree, batch_elapsed);
            batch_rec.cumulative = batch_total;
            if emit == Emit::EachSlide {
                emit_window(&mut out, incremental.window(), itree, &source.dictionary)?;
                inc_rec.dump = Some("stdout".into());
            }
            report.records.push(inc_rec);
            report.records.push(batch_rec);
        }
        if started.elapsed() > budget {
            report.timed_out = true;
            break;
        }
    }

    match emit {
        Emit::Final => out.write_all(dump_tree(incremental.tree(), &source.dictionary).as_bytes())?,
        Emit::EachSlide if slides == 0 => {
            emit_window(&mut out, incremental.window(), incremental.tree(), &source.dictionary)?
        }
        _ => {}
    }
    writeln!(out, "# windows compared: {compared} (slides after warm-up: {slides})")?;
    writeln!(out, "# incremental seconds: {:.6}", inc_total.as_secs_f64())?;
    writeln!(out, "# batch seconds: {:.6}", batch_total.as_secs_f64())?;
    if slides > 0 {
        let ratio = batch_total.as_secs_f64() / inc_total.as_secs_f64().max(f64::MIN_POSITIVE);
        writeln!(out, "# batch/incremental time ratio: {ratio:.2}")?;
    }
    writeln!(out, "# node and occurrence count mismatches: {parity_failures}")?;
    writeln!(out, "# result: {}", if report.timed_out { "timed out" } else { "identical" })?;
    out.flush()?;
    write_report(&report, run.report.as_ref())?;
    if report.timed_out {
        eprintln!("error: timed out after {:?}", started.elapsed());
        return Ok(ExitCode::from(EXIT_TIMEOUT));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn gen(args: GenArgs) -> Result<()> {
    let length = match args.length {
        Some(length) => length,
        None => args.window_multiple.checked_mul(args.window).context("stream length overflows")?,
    };
    let config = GenConfig { vocab_size: args.vocab, item_probability: args.prob, length, seed: args.seed };
    let source = generate_synthetic(&config)?;
    let mut out = output(args.output.as_ref())?;
    write_itemset_stream(&source, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn discretize(args: DiscretizeArgs) -> Result<()> {
    let series = read_numeric_series(&read_input(&args.input)?)?;
    let config = SaxConfig {
        alphabet_size: args.alphabet as usize,
        paa_size: args.paa as usize,
        normalization: if args.raw_blocks { Normalization::Series } else { Normalization::SeriesAndBlocks },
    };
    let source = sax_discretize(&series, &config)?;
    let mut out = output(args.output.as_ref())?;
    write_itemset_stream(&source, &mut out)?;
    out.flush()?;
    Ok(())
}
