use std::io::{self, Write};
use std::time::Duration;

/// One slide of one miner.
#[derive(Clone, Debug)]
pub struct SlideRecord {
    pub miner: &'static str,
    pub slide: usize,
    pub window_start: u64,
    pub window_end: u64,
    pub elapsed: Duration,
    pub cumulative: Duration,
    pub node_count: usize,
    pub occurrence_count: usize,
    /// Where this slide's pattern dump went, if it was emitted.
    pub dump: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub records: Vec<SlideRecord>,
    pub timed_out: bool,
}

impl RunReport {
    /// Comma-separated records with a header row. The timeout flag is set
    /// on the last record of an interrupted run; if no slide finished, a
    /// single record for slide 0 carries it.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(
            out,
            "miner,slide,window_start,window_end,slide_seconds,cumulative_seconds,node_count,occurrence_count,dump,timed_out"
        )?;
        if self.records.is_empty() && self.timed_out {
            writeln!(out, ",0,,,,,,,,1")?;
        }
        for (k, r) in self.records.iter().enumerate() {
            let flag = self.timed_out && k + 1 == self.records.len();
            writeln!(
                out,
                "{},{},{},{},{:.9},{:.9},{},{},{},{}",
                r.miner,
                r.slide,
                r.window_start,
                r.window_end,
                r.elapsed.as_secs_f64(),
                r.cumulative.as_secs_f64(),
                r.node_count,
                r.occurrence_count,
                r.dump.as_deref().unwrap_or(""),
                flag as u8
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(slide: usize) -> SlideRecord {
        SlideRecord {
            miner: "batch",
            slide,
            window_start: slide as u64,
            window_end: slide as u64 + 2,
            elapsed: Duration::from_millis(5),
            cumulative: Duration::from_millis(5 * slide as u64),
            node_count: 3,
            occurrence_count: 7,
            dump: None,
        }
    }

    #[test]
    fn csv_layout() {
        let report = RunReport { records: vec![record(1), record(2)], timed_out: true };
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "batch,1,1,3,0.005000000,0.005000000,3,7,,0");
        assert!(lines[2].ends_with(",1"));
    }

    #[test]
    fn timeout_before_any_slide() {
        let report = RunReport { records: Vec::new(), timed_out: true };
        let mut out = Vec::new();
        report.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 2);
    }
}
