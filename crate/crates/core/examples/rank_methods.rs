//! Friedman test, Conover post-hoc p-values and critical-difference tiers
//! for a method × dataset score table (lower is better).

use tsgeval::rank::{analyze, RankAnalysis, ScoreTable, DEFAULT_ALPHA};

const SCORES: &str = "\
method,Stock,Exchange,Energy,EEG,HAPT,Air,Boiler,DLG
A,0.10,0.12,0.09,0.20,0.15,0.11,0.08,0.13
B,0.11,0.13,0.10,0.19,0.16,0.12,0.09,0.12
C,0.30,0.28,0.35,0.40,0.33,0.31,0.29,0.36
D,0.32,0.27,0.36,0.42,0.35,0.30,0.31,0.37
E,0.60,0.55,0.70,0.66,0.58,0.61,0.59,0.64
";

pub fn run_example() -> tsgeval::Result<RankAnalysis> {
    let table = ScoreTable::read_csv(SCORES.as_bytes())?;
    let analysis = analyze(&table, DEFAULT_ALPHA)?;
    println!(
        "Friedman chi2 = {:.3} (df {}), p = {:.2e}",
        analysis.friedman.statistic, analysis.friedman.df, analysis.friedman.p_value
    );
    print!("{}", analysis.to_csv());
    Ok(analysis)
}

fn main() -> tsgeval::Result<()> {
    run_example().map(drop)
}
