//! Fixed-width ASCII pictures of strands generators.
//!
//! Rows run from region `n` at the top down to region 0, with a band for
//! circle `i` between regions `i` and `i-1`. A rising run of `/` is the
//! strand leaving `z_i^-`, a falling run of `\` the strand leaving `z_i^+`;
//! `|` marks each full wrap. Occupied regions with no moving strand get a
//! dashed pair, and an `O` row under band `i` marks `C_i`.

use crate::strands::StrandsGen;

fn run(speed: u32, glyph: char) -> String {
    let mut s = String::new();
    for t in 0..speed {
        if t > 0 && t % 2 == 0 {
            s.push('|');
        }
        s.push(glyph);
    }
    s
}

pub fn render_ascii(g: &StrandsGen) -> String {
    let n = g.n();
    let mut rows: Vec<(String, String)> = Vec::new();
    for j in (0..=n).rev() {
        let idle = g.x.has(j) && g.q(j) == 0 && g.p(j + 1) == 0;
        let content = if idle {
            "- -".to_string()
        } else if g.x.has(j) {
            "*".to_string()
        } else {
            String::new()
        };
        rows.push((format!("{j}"), content));
        if j == 0 {
            break;
        }
        let (p, q) = (g.p(j), g.q(j));
        let band = [run(p, '/'), run(q, '\\')]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        rows.push((format!("Z{j}"), band));
        if g.has_c(j) {
            rows.push((format!("C{j}"), "O".into()));
        }
    }
    let width = rows.iter().map(|(_, c)| c.chars().count()).max().unwrap_or(0).max(3);
    let label = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(l, c)| format!("{l:>label$} |{c:<width$}|\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::IState;

    #[test]
    fn idempotent_has_k_dashed_pairs() {
        let g = StrandsGen::idempotent(IState::new(3, &[0, 2, 3]).unwrap());
        let pic = render_ascii(&g);
        assert_eq!(pic.matches("- -").count(), 3);
        assert!(!pic.contains('/') && !pic.contains('\\'));
    }

    #[test]
    fn single_rising_strand() {
        let mut g = StrandsGen::idempotent(IState::new(1, &[0]).unwrap());
        g.pq[0] = (1, 0);
        assert_eq!(render_ascii(&g), " 1 |   |\nZ1 |/  |\n 0 |*  |\n");
    }

    #[test]
    fn wraps_and_loops() {
        let x = IState::full(1);
        let g = StrandsGen { x, c: 0b10, pq: vec![(1, 5)] };
        let pic = render_ascii(&g);
        assert!(pic.contains("/ \\\\|\\\\|\\"));
        assert!(pic.contains("C1 |O"));
    }
}
