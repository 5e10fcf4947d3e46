//! Plateau local search: drop one edge, greedily refill, keep the move
//! unless the edge count went down.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::{candidates, Cand, Workspace};
use super::SearchProblem;

pub(crate) struct LocalOutcome {
    pub best: usize,
    pub layers: Vec<Vec<u64>>,
    pub moves: u64,
}

pub(crate) fn local_search(prob: &SearchProblem, start: &[Vec<u64>], moves: u64, seed: u64) -> LocalOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ws = Workspace::new(prob);
    let mut order = candidates(prob.n, prob.uniformity, prob.layers);
    let mut present: Vec<Cand> = Vec::new();
    for c in &order {
        if start.get(c.layer).is_some_and(|l| l.contains(&c.mask)) {
            ws.add(c);
            present.push(*c);
        }
    }
    fill(&mut ws, &mut order, &mut present, &mut rng);
    let mut best = ws.count();
    let mut best_layers = ws.snapshot();
    let mut done = 0;
    while done < moves && !present.is_empty() {
        done += 1;
        let before = ws.count();
        let drop = present.swap_remove(rng.gen_range(0..present.len()));
        ws.remove(&drop);
        let mark = present.len();
        fill(&mut ws, &mut order, &mut present, &mut rng);
        if ws.count() < before {
            for c in present.drain(mark..) {
                ws.remove(&c);
            }
            ws.add(&drop);
            present.push(drop);
        } else if ws.count() > best {
            best = ws.count();
            best_layers = ws.snapshot();
        }
    }
    LocalOutcome {
        best,
        layers: best_layers,
        moves: done,
    }
}

fn fill(ws: &mut Workspace, order: &mut [Cand], present: &mut Vec<Cand>, rng: &mut ChaCha8Rng) {
    order.shuffle(rng);
    for c in order.iter() {
        if !ws.contains(c) && ws.admissible(c, true) {
            ws.add(c);
            present.push(*c);
        }
    }
}
