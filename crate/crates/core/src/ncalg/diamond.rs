use crate::report::{CheckRecord, CheckReport};

use super::rewrite::{Letter, Rewriter, Strategy, Word};
use super::tower::OreTower;

fn letters(tower: &OreTower) -> Vec<Letter> {
    let mut out = Vec::new();
    for (l, g) in tower.gens().iter().enumerate() {
        out.push(Letter::new(l, false));
        if g.invertible {
            out.push(Letter::new(l, true));
        }
    }
    out
}

fn reducible(a: Letter, b: Letter) -> bool {
    a.level > b.level || (a.level == b.level && a.inverse != b.inverse)
}

/// Words of the given length in which every adjacent pair is a redex: the overlap
/// ambiguities (length 3) and their chains.
pub fn overlap_words(tower: &OreTower, len: usize) -> Vec<Word> {
    let ls = letters(tower);
    let mut words: Vec<Word> = ls.iter().map(|&l| vec![l]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &words {
            let last = *w.last().unwrap();
            for &l in &ls {
                if reducible(last, l) {
                    let mut nw = w.clone();
                    nw.push(l);
                    next.push(nw);
                }
            }
        }
        words = next;
    }
    words
}

pub fn word_name(tower: &OreTower, w: &[Letter]) -> String {
    w.iter()
        .map(|l| {
            let name = &tower.gens()[l.level].name;
            if l.inverse {
                format!("{}^-1", name)
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Resolves every overlap ambiguity two ways: reduce the left pair first, or the
/// right pair first, then normalize each completely. Words longer than 3 (up to
/// `degree`) are also compared under the two global strategies.
pub fn diamond_check(tower: &OreTower, degree: usize) -> CheckReport {
    let degree = degree.max(3);
    let rw = Rewriter::new(tower);
    let mut report = CheckReport::new(format!("diamond/{}", tower.name()));
    let fmt = |p: &super::NCPoly| crate::exprio::format_poly(p, tower);
    for len in 3..=degree {
        for w in overlap_words(tower, len) {
            let id = format!("diamond/{}/{}", tower.name(), word_name(tower, &w));
            let anchor = "overlap ambiguities resolve";
            let (left, right) = if len == 3 {
                let l = rw
                    .normalize(&rw.step_at(&w, 0), Strategy::Leftmost)
                    .and_then(|a| Ok((a, rw.normalize(&rw.step_at(&w, 1), Strategy::Leftmost)?)));
                match l {
                    Ok(pair) => pair,
                    Err(e) => {
                        report.push(CheckRecord::new(id, anchor).verdict(false).witness(e.to_string()));
                        continue;
                    }
                }
            } else {
                let a = rw.normalize_word(&w, Strategy::Leftmost);
                let b = rw.normalize_word(&w, Strategy::Rightmost);
                match (a, b) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        report.push(CheckRecord::new(id, anchor).verdict(false).witness(e.to_string()));
                        continue;
                    }
                }
            };
            let ok = left == right;
            let mut rec = CheckRecord::new(id, anchor).sides(fmt(&left), fmt(&right)).verdict(ok);
            if !ok {
                rec = rec.witness(word_name(tower, &w));
            }
            report.push(rec);
        }
    }
    report
}
