//! Exhaustive small-order enumeration, Table-1-style classification
//! tallies, MacNeish bound arithmetic, and the clique bound audit over
//! group catalogs.

use std::collections::HashMap;

use serde::Serialize;

use crate::classify::{classify_square, paratopy_certificate, TransitivityClass};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::latin::LatinSquare;
use crate::packet::{find_packets, intersection_graph, CliqueRequest};
use crate::Limits;

/// `f(n)`: smallest prime-power factor of `n`, minus one. MacNeish's bound
/// guarantees `N(n) >= f(n)`.
pub fn macneish_f(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("f(n) needs n >= 2, got {n}")));
    }
    let mut m = n;
    let mut best = usize::MAX;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut pw = 1;
            while m % p == 0 {
                m /= p;
                pw *= p;
            }
            best = best.min(pw);
        }
        p += 1;
    }
    if m > 1 {
        best = best.min(m);
    }
    Ok(best - 1)
}

/// Hard cap for exhaustive enumeration; `n = 7` is reachable only through
/// the streaming interface and is hours of work.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Streams every reduced Latin square of order `n` exactly once, by
/// row-major backtracking over the free cells. Returns the number emitted.
/// The callback may return `false` to stop early.
pub fn stream_reduced_squares(
    n: usize,
    mut emit: impl FnMut(&LatinSquare) -> bool,
) -> Result<u64> {
    stream_reduced_squares_from(n, None, &mut emit)
}

/// Resumable variant: `resume` is the last emitted square; enumeration
/// continues strictly after it.
pub fn stream_reduced_squares_from(
    n: usize,
    resume: Option<&LatinSquare>,
    emit: &mut dyn FnMut(&LatinSquare) -> bool,
) -> Result<u64> {
    if n < 1 {
        return Err(Error::OutOfRange("order must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    if n == 1 {
        if resume.is_none() {
            emit(&LatinSquare::from_grid(&[vec![0]]).unwrap());
            return Ok(1);
        }
        return Ok(0);
    }
    // grid with first row and column fixed; free cells are (r, c), r, c >= 1
    let mut grid = vec![0u16; n * n];
    for i in 0..n {
        grid[i] = i as u16;
        grid[i * n] = i as u16;
    }
    let free: Vec<(usize, usize)> = (1..n)
        .flat_map(|r| (1..n).map(move |c| (r, c)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let mut row_used = vec![0u32; n];
    let mut col_used = vec![0u32; n];
    for i in 0..n {
        row_used[i] = 1 << i; // column-0 entry of row i
        col_used[i] = 1 << i; // row-0 entry of column i
    }
    row_used[0] = full;
    col_used[0] = full;
    let mut pos: usize = 0;
    let mut count: u64 = 0;
    let mut chosen: Vec<Option<usize>> = vec![None; free.len()];
    let mut skip_emit = false;
    let mut backtracking = false;

    // resuming: preload the square's choices, suppress re-emitting it, and
    // start by backtracking off its last cell
    if let Some(sq) = resume {
        if sq.order() != n {
            return Err(Error::ShapeMismatch);
        }
        for (idx, &(r, c)) in free.iter().enumerate() {
            let s = sq.get(r, c) as usize;
            chosen[idx] = Some(s);
            grid[r * n + c] = s as u16;
            row_used[r] |= 1 << s;
            col_used[c] |= 1 << s;
        }
        pos = free.len();
        skip_emit = true;
    }

    loop {
        let try_from;
        if backtracking {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            let (r, c) = free[pos];
            let s = chosen[pos].take().unwrap();
            row_used[r] &= !(1 << s);
            col_used[c] &= !(1 << s);
            try_from = s + 1;
            backtracking = false;
        } else if pos == free.len() {
            if skip_emit {
                skip_emit = false;
            } else {
                let square = LatinSquare::from_fn(n, |i, j| grid[i * n + j] as usize).unwrap();
                debug_assert!(square.is_latin());
                count += 1;
                if !emit(&square) {
                    return Ok(count);
                }
            }
            backtracking = true;
            continue;
        } else {
            try_from = 0;
        }
        let (r, c) = free[pos];
        let mut found = None;
        for s in try_from..n {
            let bit = 1u32 << s;
            if row_used[r] & bit == 0 && col_used[c] & bit == 0 {
                found = Some(s);
                break;
            }
        }
        match found {
            Some(s) => {
                chosen[pos] = Some(s);
                grid[r * n + c] = s as u16;
                row_used[r] |= 1 << s;
                col_used[c] |= 1 << s;
                pos += 1;
            }
            None => backtracking = true,
        }
    }
}

/// All reduced squares of order `n <= 6`, materialized.
pub fn all_reduced_squares(n: usize) -> Result<Vec<LatinSquare>> {
    if n > 6 {
        return Err(Error::OrderTooLarge { n, cap: 6 });
    }
    let mut out = Vec::new();
    stream_reduced_squares(n, |sq| {
        out.push(sq.clone());
        true
    })?;
    Ok(out)
}

/// One row of the classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub order: usize,
    pub main_classes: usize,
    pub group_based: usize,
    pub simply_transitive_not_group: usize,
    pub transitive_not_simply: usize,
    pub non_transitive: usize,
}

impl Table1Row {
    pub fn totals_consistent(&self) -> bool {
        self.group_based
            + self.simply_transitive_not_group
            + self.transitive_not_simply
            + self.non_transitive
            == self.main_classes
    }
}

/// Dedupes all reduced squares of order `n` into main classes via paratopy
/// certificates, classifies one representative per class, and tallies.
pub fn table1_report(n: usize, limits: &Limits) -> Result<Table1Row> {
    let mut reps: HashMap<Vec<u8>, LatinSquare> = HashMap::new();
    if n > 6 {
        return Err(Error::OrderTooLarge { n, cap: 6 });
    }
    stream_reduced_squares(n, |sq| {
        reps.entry(paratopy_certificate(sq).bytes)
            .or_insert_with(|| sq.clone());
        true
    })?;
    tally_classes(n, reps.into_values(), limits)
}

pub fn tally_classes(
    n: usize,
    reps: impl IntoIterator<Item = LatinSquare>,
    limits: &Limits,
) -> Result<Table1Row> {
    let mut row = Table1Row {
        order: n,
        main_classes: 0,
        group_based: 0,
        simply_transitive_not_group: 0,
        transitive_not_simply: 0,
        non_transitive: 0,
    };
    for rep in reps {
        row.main_classes += 1;
        match classify_square(&rep, limits)? {
            TransitivityClass::GroupBased => row.group_based += 1,
            TransitivityClass::SimplyTransitiveNotGroup => row.simply_transitive_not_group += 1,
            TransitivityClass::TransitiveNotSimply => row.transitive_not_simply += 1,
            TransitivityClass::NonTransitive => row.non_transitive += 1,
        }
    }
    debug_assert!(row.totals_consistent());
    Ok(row)
}

/// A clique exceeding `f(n) + 2` in a `k = 1` scan; impossible if the
/// simply transitive bound holds, so any witness is a bug or a discovery.
#[derive(Clone, Debug, Serialize)]
pub struct BoundViolation {
    pub group: String,
    pub core_key: String,
    pub clique_size: usize,
    pub subgroup_keys: Vec<String>,
}

#[derive(Serialize)]
pub struct BoundReport {
    pub schema: &'static str,
    pub n: usize,
    pub f_n: usize,
    pub k: usize,
    pub groups_scanned: usize,
    pub max_clique_found: usize,
    pub violations: Vec<BoundViolation>,
    /// max clique per catalog group, in input order
    pub per_group: Vec<(String, usize)>,
}

/// Scans every `K` of order `k` in every catalog group of order `k·n²`,
/// builds `Γ_K`, and records the maximum clique size found anywhere.
pub fn bound_audit(
    n: usize,
    k: usize,
    catalog: &[(String, PermGroup)],
    limits: &Limits,
) -> Result<BoundReport> {
    let f_n = macneish_f(n)?;
    let mut max_clique = 0;
    let mut violations = Vec::new();
    let mut per_group = Vec::new();
    for (name, group) in catalog {
        if group.order() != k * n * n {
            return Err(Error::CatalogOrderMismatch {
                name: name.clone(),
                expected: k * n * n,
                found: group.order(),
            });
        }
        let mut group_max = 0;
        for core in group.subgroups_of_order(k, limits)? {
            let graph = intersection_graph(group, &core, n, limits)?;
            let packets = find_packets(&graph, CliqueRequest::Max)?;
            let size = packets.first().map_or_else(
                || {
                    // no clique of size >= 3; count vertices/edges directly
                    if graph.vertex_count() == 0 {
                        0
                    } else if graph.edge_count() == 0 {
                        1
                    } else {
                        2
                    }
                },
                |p| p.subgroups.len(),
            );
            group_max = group_max.max(size);
            if k == 1 && size > f_n + 2 {
                for p in &packets {
                    violations.push(BoundViolation {
                        group: name.clone(),
                        core_key: core.key_hex(),
                        clique_size: size,
                        subgroup_keys: p.subgroups.iter().map(|h| h.key_hex()).collect(),
                    });
                }
            }
        }
        max_clique = max_clique.max(group_max);
        per_group.push((name.clone(), group_max));
    }
    Ok(BoundReport {
        schema: "bound-audit-v1",
        n,
        f_n,
        k,
        groups_scanned: catalog.len(),
        max_clique_found: max_clique,
        violations,
        per_group,
    })
}

/// Bundled fixture squares printed in the worked examples.
pub fn fixture_square(name: &str) -> Result<LatinSquare> {
    let text = match name {
        "ex51" => include_str!("../data/ex51.square"),
        "ex52" => include_str!("../data/ex52.square"),
        "ex53_m" => include_str!("../data/ex53_m.square"),
        "ex53_mprime" => include_str!("../data/ex53_mprime.square"),
        _ => return Err(Error::FixtureMissing(name.to_string())),
    };
    LatinSquare::parse(text)
}

#[derive(Serialize)]
pub struct ExampleCheck {
    pub name: String,
    pub latin: bool,
    pub class: TransitivityClass,
    pub expected: TransitivityClass,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ExampleReport {
    pub schema: &'static str,
    pub checks: Vec<ExampleCheck>,
    pub m_mprime_distinct_main_classes: bool,
    pub all_pass: bool,
}

/// Confirms the bundled fixture squares carry their documented
/// classifications and that the two order-10 squares lie in different main
/// classes.
pub fn verify_example_squares(limits: &Limits) -> Result<ExampleReport> {
    let expectations = [
        ("ex51", TransitivityClass::SimplyTransitiveNotGroup),
        ("ex52", TransitivityClass::TransitiveNotSimply),
        ("ex53_m", TransitivityClass::SimplyTransitiveNotGroup),
        ("ex53_mprime", TransitivityClass::TransitiveNotSimply),
    ];
    let mut checks = Vec::new();
    for (name, expected) in expectations {
        let sq = fixture_square(name)?;
        let latin = sq.is_latin();
        let class = classify_square(&sq, limits)?;
        checks.push(ExampleCheck {
            name: name.to_string(),
            latin,
            class,
            expected,
            pass: latin && class == expected,
        });
    }
    let m = fixture_square("ex53_m")?;
    let mp = fixture_square("ex53_mprime")?;
    let distinct = paratopy_certificate(&m) != paratopy_certificate(&mp);
    let all_pass = distinct && checks.iter().all(|c| c.pass);
    Ok(ExampleReport {
        schema: "examples-v1",
        checks,
        m_mprime_distinct_main_classes: distinct,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn macneish_values() {
        assert_eq!(macneish_f(105).unwrap(), 2);
        assert_eq!(macneish_f(6).unwrap(), 1);
        assert_eq!(macneish_f(12).unwrap(), 2);
        assert_eq!(macneish_f(22).unwrap(), 1);
        assert!(macneish_f(1).is_err());
    }

    #[test]
    fn reduced_square_counts() {
        assert_eq!(all_reduced_squares(1).unwrap().len(), 1);
        assert_eq!(all_reduced_squares(2).unwrap().len(), 1);
        assert_eq!(all_reduced_squares(3).unwrap().len(), 1);
        assert_eq!(all_reduced_squares(4).unwrap().len(), 4);
        assert_eq!(all_reduced_squares(5).unwrap().len(), 56);
        assert!(matches!(
            all_reduced_squares(7),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn reduced_squares_are_reduced_and_distinct() {
        let squares = all_reduced_squares(5).unwrap();
        for sq in &squares {
            assert!(sq.is_latin() && sq.is_reduced());
        }
        let mut seen = std::collections::HashSet::new();
        for sq in &squares {
            assert!(seen.insert(sq.emit()));
        }
    }

    #[test]
    fn resume_continues_after_square() {
        let all = all_reduced_squares(5).unwrap();
        let mid = &all[20];
        let mut rest = Vec::new();
        stream_reduced_squares_from(5, Some(mid), &mut |sq| {
            rest.push(sq.clone());
            true
        })
        .unwrap();
        assert_eq!(rest.len(), all.len() - 21);
        assert_eq!(rest.first(), all.get(21));
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let emitted = stream_reduced_squares(5, |_| {
            seen += 1;
            seen < 10
        })
        .unwrap();
        assert_eq!(emitted, 10);
    }

    #[test]
    fn fixtures_available() {
        for name in ["ex51", "ex52", "ex53_m", "ex53_mprime"] {
            assert!(fixture_square(name).unwrap().is_latin());
        }
        assert!(matches!(
            fixture_square("nope"),
            Err(Error::FixtureMissing(_))
        ));
    }
}
