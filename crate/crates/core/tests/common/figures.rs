//! The transcribed head configurations and an independent checker for the
//! conditions their labels must meet.

use fim_core::rational::int;
use fim_core::{Graph, Rational};

pub struct Config {
    pub number: usize,
    pub graph: Graph,
    /// `3y` per edge of `graph`.
    pub thrice: Vec<i64>,
}

pub fn fixtures() -> Vec<Config> {
    let text = include_str!("../fixtures/head_configs.txt");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let mut parts = line.split_whitespace();
            let number = parts.next().unwrap().parse().unwrap();
            let mut edges = Vec::new();
            let mut thrice = Vec::new();
            for item in parts {
                let (pair, label) = item.split_once(':').unwrap();
                let (a, b) = pair.split_once('-').unwrap();
                edges.push((a.parse().unwrap(), b.parse().unwrap()));
                thrice.push(label.parse().unwrap());
            }
            // labels may skip numbers; compact them, keeping 0 and 1 in place
            let mut ids: Vec<usize> = edges.iter().flat_map(|&(a, b): &(usize, usize)| [a, b]).collect();
            ids.sort_unstable();
            ids.dedup();
            let at = |v: usize| ids.binary_search(&v).unwrap();
            let edges: Vec<_> = edges.iter().map(|&(a, b)| (at(a), at(b))).collect();
            Config {
                number,
                graph: Graph::new(ids.len(), edges).unwrap(),
                thrice,
            }
        })
        .collect()
}

/// Head conditions on integer labels `3y`, straight from their definitions:
/// every edge sees at least 3 on itself and the edges sharing an endpoint;
/// vertices of degree at most 2 see 2 (core minus v0, v1) or 1 (v0, v1 and
/// the isolated rest); the labels sum to at most 7.
pub fn head_conditions(g: &Graph, thrice: &[Rational]) -> Result<(), String> {
    let core: Vec<usize> = (0..g.n())
        .filter(|&x| x <= 1 || g.edge_between(x, 0).is_some() || g.edge_between(x, 1).is_some())
        .collect();
    let at = |x: usize| -> Rational {
        g.edges()
            .iter()
            .zip(thrice)
            .filter(|((a, b), _)| *a == x || *b == x)
            .map(|(_, t)| t)
            .sum()
    };
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let seen: Rational = g
            .edges()
            .iter()
            .zip(thrice)
            .enumerate()
            .filter(|(f, ((c, d), _))| *f == e || [a, b].contains(c) || [a, b].contains(d))
            .map(|(_, (_, t))| t)
            .sum();
        if seen < int(3) {
            return Err(format!("edge {a}-{b} sees {seen}"));
        }
    }
    for x in 0..g.n() {
        let degree = g.edges().iter().filter(|(a, b)| *a == x || *b == x).count();
        if degree > 2 {
            continue;
        }
        let need = int(if x > 1 && core.contains(&x) { 2 } else { 1 });
        if at(x) < need {
            return Err(format!("vertex {x} sees {} < {need}", at(x)));
        }
    }
    for x in (0..g.n()).filter(|x| !core.contains(x)) {
        let outside = g.neighbors(x).any(|z| z <= 1 || !core.contains(&z));
        if outside {
            return Err(format!("isolated vertex {x} has a neighbor outside the core"));
        }
    }
    let total: Rational = thrice.iter().sum();
    if total > int(7) {
        return Err(format!("total {total} > 7"));
    }
    Ok(())
}
