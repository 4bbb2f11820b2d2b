use std::fmt::Write as _;

use super::{DiagramKind, TiltedDiagram};

/// ASCII grid: rows are values `1..n` top to bottom, columns `1..n`.
///
/// `#` marks a diagram cell, `o` the entry `w_k` of column `k`. In column `k` the row `a_k`
/// is underlined by `_` when empty, since the cyclic order of that column starts there.
pub fn render_diagram(d: &TiltedDiagram) -> String {
    let n = d.perm.n();
    let title = match d.kind {
        DiagramKind::Down => "down",
        DiagramKind::Up => "up",
    };
    let mut s = String::new();
    let _ = writeln!(s, "{title} diagram of {} with a = {}", d.perm, d.shifts);
    s.push_str("    ");
    for k in 1..=n {
        let _ = write!(s, "{k:>2}");
    }
    s.push('\n');
    for i in 1..=n {
        let _ = write!(s, "{i:>3} ");
        for k in 1..=n {
            let c = if d.perm.at(k) == i {
                'o'
            } else if d.cells.contains(&(i, k)) {
                '#'
            } else if k < n && d.shifts.at(k) == i {
                '_'
            } else {
                '.'
            };
            let _ = write!(s, " {c}");
        }
        s.push('\n');
    }
    let cells: Vec<String> = d.cells.iter().map(|(i, k)| format!("({i},{k})")).collect();
    let _ = writeln!(s, "cells: {{{}}}", cells.join(", "));
    s
}
