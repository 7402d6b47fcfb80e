//! Quiver presentations of path algebras: arrows are the irreducible basis
//! paths, and relations generate the kernel of the map from arrow words to
//! the algebra.

use crate::algebra::{PathAlgebra, Presentation, Relation};
use exactlin::{rat, Rat, RatMatrix};
use num_traits::Zero;
use std::collections::HashMap;

/// Arrow words from `s` to `t`, as lists of arrow indices.
fn words(alg: &PathAlgebra, arrows: &[crate::PathRef], s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(s, Vec::new())];
    while let Some((v, word)) = stack.pop() {
        if v == t && !word.is_empty() {
            out.push(word.clone());
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source == v && alg.hom_dim(a.target, t) > 0 {
                let mut w = word.clone();
                w.push(i);
                stack.push((a.target, w));
            }
        }
    }
    out.sort();
    out
}

fn evaluate(alg: &PathAlgebra, arrows: &[crate::PathRef], word: &[usize]) -> crate::PathRef {
    let mut p = arrows[word[0]];
    for &a in &word[1..] {
        p = alg.compose(p, arrows[a]).expect("arrow words evaluate to basis paths");
    }
    p
}

pub(crate) fn present(alg: &PathAlgebra) -> Presentation {
    let arrows = alg.arrows();
    let n = alg.vertex_count();
    let mut word_lists: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut ideal: HashMap<(usize, usize), Vec<Vec<Rat>>> = HashMap::new();
    for s in 0..n {
        for t in 0..n {
            if s == t || alg.hom_dim(s, t) == 0 {
                continue;
            }
            let ws = words(alg, &arrows, s, t);
            let mut m = RatMatrix::zeros(alg.hom_dim(s, t), ws.len());
            for (j, w) in ws.iter().enumerate() {
                m.set(evaluate(alg, &arrows, w).index, j, rat(1));
            }
            ideal.insert((s, t), m.nullspace());
            word_lists.insert((s, t), ws);
        }
    }
    let mut relations = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let Some(kernel) = ideal.get(&(s, t)) else { continue };
            if kernel.is_empty() {
                continue;
            }
            let ws = &word_lists[&(s, t)];
            let index: HashMap<&Vec<usize>, usize> = ws.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut generated: Vec<Vec<Rat>> = Vec::new();
            for (ai, a) in arrows.iter().enumerate() {
                if a.source == s {
                    if let (Some(rels), Some(sub)) = (ideal.get(&(a.target, t)), word_lists.get(&(a.target, t))) {
                        for r in rels {
                            let mut v = vec![Rat::zero(); ws.len()];
                            for (c, w) in r.iter().zip(sub) {
                                if !c.is_zero() {
                                    let word: Vec<usize> = std::iter::once(ai).chain(w.iter().copied()).collect();
                                    v[index[&word]] += c;
                                }
                            }
                            generated.push(v);
                        }
                    }
                }
                if a.target == t {
                    if let (Some(rels), Some(sub)) = (ideal.get(&(s, a.source)), word_lists.get(&(s, a.source))) {
                        for r in rels {
                            let mut v = vec![Rat::zero(); ws.len()];
                            for (c, w) in r.iter().zip(sub) {
                                if !c.is_zero() {
                                    let word: Vec<usize> = w.iter().copied().chain(std::iter::once(ai)).collect();
                                    v[index[&word]] += c;
                                }
                            }
                            generated.push(v);
                        }
                    }
                }
            }
            let mut span = generated.clone();
            let mut rank = exactlin::rat::span_rank(&span, ws.len());
            for r in kernel {
                span.push(r.clone());
                let next = exactlin::rat::span_rank(&span, ws.len());
                if next > rank {
                    rank = next;
                    let terms = r
                        .iter()
                        .zip(ws)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, w)| (w.clone(), c.clone()))
                        .collect();
                    relations.push(Relation { source: s, target: t, terms });
                } else {
                    span.pop();
                }
            }
        }
    }
    let arrow_tags = arrows.iter().map(|&a| (a, alg.tag(a).to_vec())).collect();
    Presentation { vertices: alg.vertices.clone(), arrows: arrow_tags, relations }
}
