//! Realizability tables: theorem rules first, then explicit constructions,
//! then search.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructor::{base_witness_sigma22, canonical_witness, realize_sigma_2n2, realize_sigma_m22, Witness};
use crate::error::{Error, Result};
use crate::search::{search_realization, SearchSpec};
use crate::signs::{canonical_couple, enumerate_couples, Couple, SignPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    T1P1,
    T1P2,
    T1P3,
    T2P1,
    T2P2,
    #[serde(rename = "CANONICAL_ONLY")]
    CanonicalOnly,
    #[serde(rename = "IR_TRANSFER")]
    IrTransfer,
    #[serde(rename = "IM_TRANSFER")]
    ImTransfer,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::T1P1,
        RuleId::T1P2,
        RuleId::T1P3,
        RuleId::T2P1,
        RuleId::T2P2,
        RuleId::CanonicalOnly,
        RuleId::IrTransfer,
        RuleId::ImTransfer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::T1P1 => "T1P1",
            RuleId::T1P2 => "T1P2",
            RuleId::T1P3 => "T1P3",
            RuleId::T2P1 => "T2P1",
            RuleId::T2P2 => "T2P2",
            RuleId::CanonicalOnly => "CANONICAL_ONLY",
            RuleId::IrTransfer => "IR_TRANSFER",
            RuleId::ImTransfer => "IM_TRANSFER",
        }
    }

    /// What the rule states.
    pub fn citation(self) -> &'static str {
        match self {
            RuleId::T1P1 => "Σ_{m,2,2}, d ≥ 7: only triples with w ≥ m-3 are realizable",
            RuleId::T1P2 => "Σ_{m,2,2}, d ≥ 6: triples with u+v ≤ 3 and (0,4,m-3) are realizable",
            RuleId::T1P3 => {
                "Σ_{m,2,2}, d ≥ 6: (4,0,m-3), (3,1,m-3), (2,2,m-3), (1,3,m-3) are not realizable"
            }
            RuleId::T2P1 => "Σ_{2,n,2}, n ≥ 4: triples with u ≤ 2 and w ≤ 2 are realizable",
            RuleId::T2P2 => "Σ_{2,n,2}, n ≥ 4: triples with u ≥ 3 or w ≥ 3 are not realizable",
            RuleId::CanonicalOnly => {
                "Σ_{1,n,1} (n ≥ 3) and Σ_{m,1,q} are realizable only with the canonical order (q-1,n-1,m-1)"
            }
            RuleId::IrTransfer => "i_r maps (Σ_{m,n,q},(u,v,w)) to (Σ_{q,n,m},(w,v,u)) and preserves realizability",
            RuleId::ImTransfer => "i_m exchanges P and N and preserves realizability",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Realizable,
    NonRealizable,
    SearchFailed,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Realizable => "Realizable",
            Status::NonRealizable => "NonRealizable",
            Status::SearchFailed => "SearchFailed",
            Status::Unknown => "Unknown",
        })
    }
}

/// A decision of the rule engine. For transfers, `basis` is the rule that
/// decided the image couple `via`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub status: Status,
    pub rule: RuleId,
    pub basis: Option<RuleId>,
    pub via: Option<Couple>,
}

impl Decision {
    /// The rule that actually settles the couple.
    pub fn deciding_rule(&self) -> RuleId {
        self.basis.unwrap_or(self.rule)
    }

    pub fn label(&self) -> String {
        match self.basis {
            Some(b) => format!("{}({b})", self.rule),
            None => self.rule.to_string(),
        }
    }

    pub fn citation(&self) -> String {
        match (&self.via, self.basis) {
            (Some(via), Some(b)) => format!("{}; on {via}: {}", self.rule.citation(), b.citation()),
            _ => self.rule.citation().to_string(),
        }
    }
}

fn direct_rule(c: &Couple) -> Option<(Status, RuleId)> {
    let blocks = c.pattern.blocks();
    let [m, n, q] = blocks[..] else {
        return None;
    };
    let code = c.triple_code().ok()?;
    let (u, v, w) = (code.u, code.v, code.w);
    // Σ_{1,2,1} is the i_m image of Σ_{2,2}, whose three orders are all
    // realizable, so it is not canonical-only
    if n == 1 || (m == 1 && q == 1 && n >= 3) {
        let canonical = (u, v, w) == (q - 1, n - 1, m - 1);
        let s = if canonical {
            Status::Realizable
        } else {
            Status::NonRealizable
        };
        return Some((s, RuleId::CanonicalOnly));
    }
    if n == 2 && q == 2 && m >= 3 {
        // u + v + w = m + 1, so w >= m - 3 iff u + v <= 4
        return Some(if u + v >= 5 {
            (Status::NonRealizable, RuleId::T1P1)
        } else if u + v <= 3 || (u, v) == (0, 4) {
            (Status::Realizable, RuleId::T1P2)
        } else {
            (Status::NonRealizable, RuleId::T1P3)
        });
    }
    if m == 2 && q == 2 && n >= 4 {
        return Some(if u <= 2 && w <= 2 {
            (Status::Realizable, RuleId::T2P1)
        } else {
            (Status::NonRealizable, RuleId::T2P2)
        });
    }
    None
}

/// Decides `c` when one of the encoded theorems applies to it or to its
/// image under `i_r`, `i_m` or both.
pub fn theorem_rule_engine(c: &Couple) -> Option<Decision> {
    if let Some((status, rule)) = direct_rule(c) {
        return Some(Decision {
            status,
            rule,
            basis: None,
            via: None,
        });
    }
    let images = [
        (RuleId::IrTransfer, c.apply_ir()),
        (RuleId::ImTransfer, c.apply_im()),
        (RuleId::ImTransfer, c.apply_ir().apply_im()),
    ];
    images.into_iter().find_map(|(rule, image)| {
        direct_rule(&image).map(|(status, basis)| Decision {
            status,
            rule,
            basis: Some(basis),
            via: Some(image),
        })
    })
}

/// Explicit construction for `c` or one of its orbit images, with a short
/// description of the route.
pub fn construct(c: &Couple) -> Option<(Witness, String)> {
    if let Some(found) = construct_direct(c) {
        return Some(found);
    }
    let ir = c.apply_ir();
    if let Some((w, how)) = construct_direct(&ir) {
        return w.apply_ir().ok().map(|w| (w, format!("i_r image of {ir}: {how}")));
    }
    let im = c.apply_im();
    if let Some((w, how)) = construct_direct(&im) {
        return w.apply_im().ok().map(|w| (w, format!("i_m image of {im}: {how}")));
    }
    let both = ir.apply_im();
    construct_direct(&both).and_then(|(w, how)| {
        let back = w.apply_im().ok()?.apply_ir().ok()?;
        Some((back, format!("i_m i_r image of {both}: {how}")))
    })
}

fn construct_direct(c: &Couple) -> Option<(Witness, String)> {
    let blocks = c.pattern.blocks();
    if blocks == [2, 2] {
        let w = base_witness_sigma22(c.pair_code().ok()?).ok()?;
        return Some((w, "fixed Σ_{2,2} base".into()));
    }
    let [m, n, q] = blocks[..] else {
        return None;
    };
    let code = c.triple_code().ok()?;
    let family = if n == 2 && q == 2 && m >= 3 {
        realize_sigma_m22(m, code).ok().map(|w| {
            let how = match m - 3 {
                0 => "cached degree-6 base".to_string(),
                1 => "degree-6 base times (1+εx)".to_string(),
                k => format!("degree-6 base times (1+εx) {k} times"),
            };
            (w, how)
        })
    } else if m == 2 && q == 2 && n >= 4 {
        realize_sigma_2n2(n, code)
            .ok()
            .map(|w| (w, format!("triple concatenation Σ_{{2,2}} * Σ_{} * Σ_{{2,2}}", n - 2)))
    } else {
        None
    };
    if let Some(found) = family.filter(|(w, _)| w.realizes(c)) {
        return Some(found);
    }
    if canonical_couple(&c.pattern).ok().as_ref() == Some(c) {
        let w = canonical_witness(&c.pattern).ok()?;
        return Some((w, "canonical concatenation".into()));
    }
    None
}

/// Refuses any witness for a couple the rules declare non-realizable.
pub fn admit_witness(c: &Couple, w: &Witness) -> Result<()> {
    if !w.realizes(c) {
        return Err(Error::SoundnessViolation(format!(
            "witness realizes {} instead of {c}",
            w.couple
        )));
    }
    if let Some(d) = theorem_rule_engine(c) {
        if d.status == Status::NonRealizable {
            return Err(Error::SoundnessViolation(format!(
                "verified witness for {c}, which {} declares non-realizable",
                d.label()
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Fall back to search for couples without a construction.
    pub search: bool,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub denominator_bound: u64,
    pub max_degree: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            search: true,
            restarts: 200,
            iterations: 2000,
            seed: 0,
            denominator_bound: 1_000_000,
            max_degree: 12,
        }
    }
}

impl ClassifyOptions {
    pub fn search_spec(&self, couple: Couple) -> SearchSpec {
        SearchSpec {
            couple,
            restarts: self.restarts,
            iterations: self.iterations,
            seed: self.seed,
            denominator_bound: self.denominator_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub couple: Couple,
    pub status: Status,
    pub rule: Option<Decision>,
    /// Rule citation, construction route or search budget.
    pub provenance: String,
    pub witness: Option<Witness>,
    pub witness_file: Option<String>,
}

fn classify_couple(c: &Couple, opts: &ClassifyOptions) -> Result<ClassificationEntry> {
    let rule = theorem_rule_engine(c);
    let entry = |status, provenance: String, witness| ClassificationEntry {
        couple: c.clone(),
        status,
        rule: rule.clone(),
        provenance,
        witness,
        witness_file: None,
    };
    if let Some(d) = rule.as_ref().filter(|d| d.status == Status::NonRealizable) {
        return Ok(entry(Status::NonRealizable, d.citation(), None));
    }
    if let Some((w, how)) = construct(c) {
        admit_witness(c, &w)?;
        return Ok(entry(Status::Realizable, format!("constructor: {how}"), Some(w)));
    }
    if !opts.search {
        return Ok(entry(Status::Unknown, "no construction; search disabled".into(), None));
    }
    let spec = opts.search_spec(c.clone());
    let r = search_realization(&spec);
    match r.witness {
        Some(w) => {
            admit_witness(c, &w)?;
            let how = format!("search: seed {}, restart {}", spec.seed, r.restarts_used - 1);
            Ok(entry(Status::Realizable, how, Some(w)))
        }
        None => {
            let how = format!(
                "search exhausted: {} restarts x {} iterations, seed {}, best margin {:.3e}",
                spec.restarts, spec.iterations, spec.seed, r.best_margin
            );
            Ok(entry(Status::SearchFailed, how, None))
        }
    }
}

/// Classifies every compatible couple of a three-block pattern, in
/// lexicographic order of triple codes.
pub fn classify_family(pattern: &SignPattern, opts: &ClassifyOptions) -> Result<Vec<ClassificationEntry>> {
    if pattern.degree() > opts.max_degree {
        return Err(Error::Unsupported(format!(
            "degree {} exceeds the cap {}",
            pattern.degree(),
            opts.max_degree
        )));
    }
    let couples = enumerate_couples(pattern)?;
    couples.par_iter().map(|c| classify_couple(c, opts)).collect()
}

/// Classifies a single couple with the same precedence as
/// [`classify_family`].
pub fn classify_one(c: &Couple, opts: &ClassifyOptions) -> Result<ClassificationEntry> {
    classify_couple(c, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

const COLUMNS: [&str; 9] = [
    "pattern",
    "order",
    "u",
    "v",
    "w",
    "status",
    "rule",
    "witness_file",
    "provenance",
];

fn row(e: &ClassificationEntry) -> [String; 9] {
    let (u, v, w) = match e.couple.triple_code() {
        Ok(c) => (c.u.to_string(), c.v.to_string(), c.w.to_string()),
        Err(_) => Default::default(),
    };
    [
        e.couple.pattern.label(),
        e.couple.order.to_string(),
        u,
        v,
        w,
        e.status.to_string(),
        e.rule.as_ref().map(Decision::label).unwrap_or_default(),
        e.witness_file.clone().unwrap_or_default(),
        e.provenance.clone(),
    ]
}

fn sorted(entries: &[ClassificationEntry]) -> Vec<&ClassificationEntry> {
    let mut v: Vec<&ClassificationEntry> = entries.iter().collect();
    v.sort_by_key(|e| (e.couple.pattern.clone(), e.couple.triple_code().ok()));
    v
}

/// Renders a table; rows are ordered by pattern, then triple code.
pub fn render_table(entries: &[ClassificationEntry], format: TableFormat) -> Result<String> {
    let rows = sorted(entries);
    match format {
        TableFormat::Json => {
            let owned: Vec<&ClassificationEntry> = rows;
            serde_json::to_string_pretty(&owned)
                .map(|s| s + "\n")
                .map_err(|e| Error::Io(e.to_string()))
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(COLUMNS).map_err(io)?;
            for e in rows {
                w.write_record(row(e)).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
        TableFormat::Markdown => {
            let mut s = format!("| {} |\n|{}\n", COLUMNS.join(" | "), "---|".repeat(COLUMNS.len()));
            for e in rows {
                let cells: Vec<String> = row(e).iter().map(|c| c.replace('|', "\\|")).collect();
                s.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            Ok(s)
        }
    }
}

pub fn export_table(entries: &[ClassificationEntry], format: TableFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render_table(entries, format)?)?;
    Ok(())
}

/// Reads back a JSON table; witnesses are re-verified on load.
pub fn import_table_json(text: &str) -> Result<Vec<ClassificationEntry>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// File name for a couple's witness, e.g. `S2-4-2_2-1-2.json`.
pub fn witness_file_name(c: &Couple) -> String {
    let code = c
        .triple_code()
        .map(|t| format!("{}-{}-{}", t.u, t.v, t.w))
        .unwrap_or_else(|_| c.order.to_string());
    format!("{}_{code}.json", c.pattern.label().replace(',', "-"))
}

/// Writes each witness to `dir` and records the file in its entry.
pub fn write_witnesses(entries: &mut [ClassificationEntry], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in entries.iter_mut() {
        if let Some(w) = &e.witness {
            let name = witness_file_name(&e.couple);
            std::fs::write(dir.join(&name), w.to_json() + "\n")?;
            e.witness_file = Some(dir.join(name).display().to_string());
        }
    }
    Ok(())
}

/// Three-block patterns of degree `d` that the rules decide: `Σ_{m,2,2}`
/// (`m ≥ 3`), `Σ_{2,2,q}` (`q ≥ 3`), `Σ_{2,n,2}` (`n ≥ 4`), `Σ_{1,n,1}` (`n ≥ 3`) and
/// `Σ_{m,1,q}`.
pub fn supported_patterns(d: usize) -> Vec<SignPattern> {
    let mut out = Vec::new();
    for m in 1..=d {
        for n in 1..=d {
            if m + n > d {
                break;
            }
            let q = d + 1 - m - n;
            if q == 0 {
                continue;
            }
            let supported = (n == 2 && q == 2 && m >= 3)
                || (m == 2 && n == 2 && q >= 3)
                || (m == 2 && q == 2 && n >= 4)
                || (m == 1 && q == 1 && n >= 3)
                || n == 1;
            if supported {
                out.push(SignPattern::from_blocks(&[m, n, q]).expect("positive blocks"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessAudit {
    pub couples_searched: usize,
    /// Rule-impossible couples for which search returned a witness.
    pub violations: Vec<Couple>,
}

/// Runs search on every rule-impossible couple of the supported families
/// of degree `<= max_degree` (and on their `i_m` images) and records any
/// witness it returns.
pub fn audit_search(max_degree: usize, opts: &ClassifyOptions) -> SoundnessAudit {
    let mut targets = Vec::new();
    for d in 2..=max_degree {
        for p in supported_patterns(d) {
            for c in enumerate_couples(&p).expect("three blocks") {
                if theorem_rule_engine(&c).is_some_and(|r| r.status == Status::NonRealizable) {
                    targets.push(c.apply_im());
                    targets.push(c);
                }
            }
        }
    }
    targets.sort();
    targets.dedup();
    let violations = targets
        .par_iter()
        .filter(|c| search_realization(&opts.search_spec((*c).clone())).witness.is_some())
        .cloned()
        .collect();
    SoundnessAudit {
        couples_searched: targets.len(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signs::TripleCode;
    use crate::rational::{int, rat};

    fn couple(s: &str) -> Couple {
        s.parse().unwrap()
    }

    fn decide(s: &str) -> Decision {
        theorem_rule_engine(&couple(s)).unwrap()
    }

    #[test]
    fn rules() {
        let d = decide("S4,2,2 (2,2,1)");
        assert_eq!((d.status, d.rule), (Status::NonRealizable, RuleId::T1P3));
        let d = decide("S2,4,2 (0,2,3)");
        assert_eq!((d.status, d.rule), (Status::NonRealizable, RuleId::T2P2));
        let d = decide("S2,2,4 (1,2,2)");
        assert_eq!(d.rule, RuleId::IrTransfer);
        assert_eq!(d.basis, Some(RuleId::T1P3));
        assert_eq!(d.via, Some(couple("S4,2,2 (2,2,1)")));
        assert_eq!(d.status, Status::NonRealizable);
        assert_eq!(decide("S4,2,2 (0,4,1)").status, Status::Realizable);
        assert_eq!(decide("S4,2,2 (3,2,0)").rule, RuleId::T1P1);
        assert_eq!(decide("S1,3,1 (0,2,0)").status, Status::Realizable);
        assert_eq!(decide("S1,3,1 (1,1,0)").status, Status::NonRealizable);
        assert_eq!(decide("S3,1,2 (1,0,2)").status, Status::Realizable);
        assert!(theorem_rule_engine(&couple("S2,2,2 (1,1,1)")).is_none());
    }

    #[test]
    fn im_images_are_decided() {
        let c = couple("S2,4,2 (3,1,1)").apply_im();
        let d = theorem_rule_engine(&c).unwrap();
        assert_eq!(d.rule, RuleId::ImTransfer);
        assert_eq!(d.basis, Some(RuleId::T2P2));
        let c = couple("S2,2,4 (2,1,2)").apply_im();
        let d = theorem_rule_engine(&c).unwrap();
        assert_eq!(d.status, Status::Realizable);
    }

    #[test]
    fn rule_ids_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(r.as_str().parse::<RuleId>().unwrap(), r);
            let j = serde_json::to_string(&r).unwrap();
            assert_eq!(j, format!("\"{}\"", r.as_str()));
        }
    }

    #[test]
    fn orbits_share_status() {
        for d in 2..=7 {
            for p in supported_patterns(d) {
                for c in enumerate_couples(&p).unwrap() {
                    let s = theorem_rule_engine(&c).unwrap().status;
                    for o in c.orbit() {
                        assert_eq!(theorem_rule_engine(&o).unwrap().status, s, "{o}");
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_couples_are_realizable() {
        for d in 2..=9 {
            for p in supported_patterns(d) {
                let c = canonical_couple(&p).unwrap();
                assert_eq!(theorem_rule_engine(&c).unwrap().status, Status::Realizable, "{c}");
            }
        }
    }

    #[test]
    fn constructions_cover_realizable_rules() {
        for d in 5..=8 {
            for p in supported_patterns(d) {
                for c in enumerate_couples(&p).unwrap() {
                    if theorem_rule_engine(&c).unwrap().status == Status::Realizable {
                        let (w, _) = construct(&c).unwrap_or_else(|| panic!("{c}"));
                        assert!(w.realizes(&c));
                    }
                }
            }
        }
    }

    #[test]
    fn sigma121_takes_every_order() {
        let opts = ClassifyOptions { search: false, ..ClassifyOptions::default() };
        let p = SignPattern::from_blocks(&[1, 2, 1]).unwrap();
        for c in enumerate_couples(&p).unwrap() {
            let e = classify_one(&c, &opts).unwrap();
            assert_eq!(e.status, Status::Realizable, "{c}");
            assert!(e.witness.unwrap().reverify());
        }
        let w = crate::constructor::Witness::from_config(
            crate::config::RootConfiguration::from_values(vec![rat(-5, 2), int(1), int(2)]).unwrap(),
        )
        .unwrap();
        assert_eq!(w.coefficients.to_string(), "x^3 - 1/2x^2 - 11/2x + 5");
        assert_eq!(w.couple, couple("S1,2,1 (0,0,1)"));
        assert!(theorem_rule_engine(&w.couple).is_none());
    }

    #[test]
    fn admission_rejects_contradictions() {
        let (w, _) = construct(&couple("S2,4,2 (2,1,2)")).unwrap();
        assert!(admit_witness(&couple("S2,4,2 (2,1,2)"), &w).is_ok());
        // a verified witness cannot be reused for another couple
        assert!(matches!(
            admit_witness(&couple("S2,4,2 (3,1,1)"), &w),
            Err(Error::SoundnessViolation(_))
        ));
    }

    #[test]
    fn small_table() {
        let p = SignPattern::from_blocks(&[3, 2, 2]).unwrap();
        let entries = classify_family(&p, &ClassifyOptions::default()).unwrap();
        assert_eq!(entries.len(), 15);
        let bad: Vec<TripleCode> = entries
            .iter()
            .filter(|e| e.status == Status::NonRealizable)
            .map(|e| e.couple.triple_code().unwrap())
            .collect();
        assert_eq!(
            bad,
            vec![
                TripleCode::new(1, 3, 0),
                TripleCode::new(2, 2, 0),
                TripleCode::new(3, 1, 0),
                TripleCode::new(4, 0, 0)
            ]
        );
        let csv = render_table(&entries, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 16);
        assert!(csv.starts_with("pattern,order,u,v,w,status,rule,witness_file,provenance"));
        let md = render_table(&entries, TableFormat::Markdown).unwrap();
        assert_eq!(md.lines().count(), 17);
        let json = render_table(&entries, TableFormat::Json).unwrap();
        assert_eq!(import_table_json(&json).unwrap(), entries);
    }

    #[test]
    fn empty_tables() {
        assert_eq!(render_table(&[], TableFormat::Csv).unwrap().lines().count(), 1);
        assert_eq!(render_table(&[], TableFormat::Markdown).unwrap().lines().count(), 2);
        assert_eq!(render_table(&[], TableFormat::Json).unwrap().trim(), "[]");
    }

    #[test]
    fn degree_cap() {
        let p = SignPattern::from_blocks(&[2, 10, 2]).unwrap();
        assert!(classify_family(&p, &ClassifyOptions::default()).is_err());
    }

    #[test]
    fn file_names() {
        assert_eq!(witness_file_name(&couple("S2,4,2 (2,1,2)")), "S2-4-2_2-1-2.json");
    }
}
