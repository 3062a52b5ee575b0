//! Group catalog files: named permutation groups given by generators in
//! cycle notation.
//!
//! Format, one record per group:
//! ```text
//! group <name>
//! degree <d>
//! gen <cycle-notation>      # one or more; points are 1-based in files
//! order <m>                 # optional, verified when present
//! end
//! ```

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

#[derive(Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermGroup,
    pub declared_order: Option<usize>,
}

#[derive(Clone, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        let mut name: Option<String> = None;
        let mut degree: Option<usize> = None;
        let mut gens: Vec<String> = Vec::new();
        let mut declared: Option<usize> = None;

        let bad = |line: usize, msg: &str| Error::ParseError {
            line,
            msg: msg.to_string(),
        };

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let n = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (kw, rest) = match line.split_once(char::is_whitespace) {
                Some((kw, rest)) => (kw, rest.trim()),
                None => (line, ""),
            };
            match kw {
                "group" => {
                    if name.is_some() {
                        return Err(bad(n, "nested group record"));
                    }
                    if rest.is_empty() {
                        return Err(bad(n, "group needs a name"));
                    }
                    name = Some(rest.to_string());
                }
                "degree" => {
                    degree = Some(
                        rest.parse()
                            .map_err(|_| bad(n, "degree must be an integer"))?,
                    );
                }
                "gen" => {
                    if name.is_none() {
                        return Err(bad(n, "gen outside a group record"));
                    }
                    gens.push(rest.to_string());
                }
                "order" => {
                    declared = Some(
                        rest.parse()
                            .map_err(|_| bad(n, "order must be an integer"))?,
                    );
                }
                "end" => {
                    let gname = name.take().ok_or_else(|| bad(n, "end without group"))?;
                    let d = degree.take().ok_or_else(|| bad(n, "missing degree"))?;
                    let mut perms = Vec::new();
                    for g in &gens {
                        perms.push(Perm::parse_cycles(g, d).map_err(|e| Error::ParseError {
                            line: n,
                            msg: format!("{gname}: {e}"),
                        })?);
                    }
                    let group = PermGroup::generate(d, &perms)?;
                    if let Some(m) = declared {
                        if group.order() != m {
                            return Err(Error::OrderMismatch {
                                name: gname,
                                declared: m,
                                computed: group.order(),
                            });
                        }
                    }
                    entries.push(CatalogEntry {
                        name: gname,
                        group,
                        declared_order: declared.take(),
                    });
                    gens.clear();
                }
                _ => return Err(bad(n, &format!("unknown keyword {kw}"))),
            }
        }
        if name.is_some() {
            return Err(Error::ParseError {
                line: text.lines().count(),
                msg: "unterminated group record".into(),
            });
        }
        Ok(Catalog { entries })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("group {}\n", e.name));
            out.push_str(&format!("degree {}\n", e.group.degree()));
            for g in e.group.generators() {
                out.push_str(&format!("gen {}\n", g.cycle_string()));
            }
            out.push_str(&format!("order {}\n", e.group.order()));
            out.push_str("end\n");
        }
        out
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn find(&self, name: &str) -> Result<&CatalogEntry> {
        self.get(name)
            .ok_or_else(|| Error::UnknownPacketReference(format!("group {name} not in catalog")))
    }
}

/// Bundled catalogs, compiled into the crate.
pub fn bundled(name: &str) -> Result<Catalog> {
    let text = match name {
        "small" => include_str!("../data/small.cat"),
        "order4" => include_str!("../data/order4.cat"),
        "order9" => include_str!("../data/order9.cat"),
        "order36" => include_str!("../data/order36.cat"),
        "examples" => include_str!("../data/examples.cat"),
        _ => return Err(Error::FixtureMissing(format!("bundled catalog {name}"))),
    };
    Catalog::parse(text)
}
