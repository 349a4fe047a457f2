//! Cycling, decycling, super summit sets and ultra summit sets.
//!
//! Neighbours in a summit graph are found through minimal simple conjugators:
//! for each generator `σ_i` the smallest simple `ρ ≽ σ_i` with `x^ρ` still in
//! the set. Both sets are closed under meets of such conjugators, so every
//! conjugation between elements factors through these steps and a
//! breadth-first search over them enumerates the whole set.
//!
//! The ultra summit set keeps only the summit elements lying on their own
//! cycling orbit, and the set of sliding circuits those on their own cyclic
//! sliding orbit. The latter is usually far smaller, so the conjugacy search
//! walks it.

use std::collections::{HashMap, HashSet};

use crate::error::{BraidError, Result};
use crate::garside::normal_form::NormalForm;
use crate::garside::simple::SimpleBraid;
use crate::word::BraidWord;

/// `s⁻¹ · x · s` for a simple `s`.
pub(crate) fn conjugate_by_simple(x: &NormalForm, s: &SimpleBraid) -> NormalForm {
    // s⁻¹ = Δ⁻¹ τ(s*), then Δ⁻¹ τ(s*) Δ^p X s = Δ^{p-1} τ^{p+1}(s*) X s
    let p = x.inf();
    let mut parts = Vec::with_capacity(x.canonical_length() + 2);
    parts.push(s.right_complement().flip_pow(p + 1));
    parts.extend_from_slice(x.factors());
    parts.push(*s);
    NormalForm::from_parts(x.strands(), p - 1, &parts)
}

/// One cycling step; returns the new form and the simple conjugator.
pub fn cycle(x: &NormalForm) -> (NormalForm, BraidWord) {
    let n = x.strands();
    if x.canonical_length() == 0 {
        return (x.clone(), BraidWord::identity(n));
    }
    let p = x.inf();
    let f = x.factors();
    let c = f[0].flip_pow(p);
    let mut parts: Vec<SimpleBraid> = f[1..].to_vec();
    parts.push(c);
    (NormalForm::from_parts(n, p, &parts), c.to_word())
}

/// One decycling step; the conjugator is the inverse of the last factor.
pub fn decycle(x: &NormalForm) -> (NormalForm, BraidWord) {
    let n = x.strands();
    let r = x.canonical_length();
    if r == 0 {
        return (x.clone(), BraidWord::identity(n));
    }
    let p = x.inf();
    let f = x.factors();
    let mut parts = vec![f[r - 1].flip_pow(p)];
    parts.extend_from_slice(&f[..r - 1]);
    (
        NormalForm::from_parts(n, p, &parts),
        f[r - 1].to_word().inverse(),
    )
}

/// Conjugates `w` into its super summit set by cycling (to maximise the
/// infimum) and then decycling (to minimise the supremum).
/// Returns the summit element and a conjugator `c` with `c⁻¹ w c = summit`.
pub fn summit(x: &NormalForm) -> (NormalForm, BraidWord) {
    let n = x.strands();
    let patience = n * (n - 1) / 2;
    let mut cur = x.clone();
    let mut conj = BraidWord::identity(n);

    let mut stall = 0;
    while stall < patience && cur.canonical_length() > 0 {
        let (next, c) = cycle(&cur);
        stall = if next.inf() > cur.inf() { 0 } else { stall + 1 };
        conj = conj.multiply(&c).expect("same strands");
        cur = next;
    }
    let mut stall = 0;
    while stall < patience && cur.canonical_length() > 0 {
        let (next, c) = decycle(&cur);
        stall = if next.sup() < cur.sup() { 0 } else { stall + 1 };
        conj = conj.multiply(&c).expect("same strands");
        cur = next;
    }
    (cur, conj)
}

/// Smallest simple `ρ ≽ start` with `inf(x^ρ) ≥ inf(x)`, for `x` in its
/// super summit set.
fn minimal_for_inf(x: &NormalForm, start: SimpleBraid) -> SimpleBraid {
    let mut rho = start;
    loop {
        // need τ^p(ρ) ≼ x_1⋯x_r ρ; push τ^p(ρ) through the factors and absorb
        // what is left over into ρ
        let mut c = rho.flip_pow(x.inf());
        for f in x.factors() {
            c = f.right_residual(&c);
        }
        let next = rho.join(&c);
        if next == rho {
            return rho;
        }
        rho = next;
    }
}

/// Smallest simple `ρ ≽ start` keeping `x` in its super summit set.
/// `x_inv` must be the normal form of `x⁻¹`.
pub(crate) fn minimal_simple(
    x: &NormalForm,
    x_inv: &NormalForm,
    start: SimpleBraid,
) -> SimpleBraid {
    let mut rho = start;
    loop {
        let next = minimal_for_inf(x_inv, minimal_for_inf(x, rho));
        if next == rho {
            return rho;
        }
        rho = next;
    }
}

/// Which summit set a search walks. The ultra summit set keeps the summit
/// elements lying on their own cycling orbit; the set of sliding circuits
/// does the same for cyclic sliding and is smaller still.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Summit {
    Super,
    Ultra,
    Sliding,
}

impl Summit {
    /// Simple conjugator of one step of the defining operation.
    fn step(self, x: &NormalForm) -> SimpleBraid {
        let n = x.strands();
        let (Some(first), Some(last)) = (x.factors().first(), x.factors().last()) else {
            return SimpleBraid::identity(n);
        };
        let iota = first.flip_pow(x.inf());
        match self {
            Summit::Super | Summit::Ultra => iota,
            // preferred prefix: ι(x) ∧ ∂(φ(x))
            Summit::Sliding => iota.meet(&last.right_complement()),
        }
    }

    fn next(self, x: &NormalForm) -> NormalForm {
        conjugate_by_simple(x, &self.step(x))
    }

    /// Whether a summit element returns to itself under the step. Every
    /// element met on the way is settled and remembered in `known`.
    fn is_circuit(self, x: &NormalForm, known: &mut HashMap<NormalForm, bool>) -> bool {
        if self == Summit::Super {
            return true;
        }
        let mut trail = Vec::new();
        let mut pos = HashMap::new();
        let mut cur = x.clone();
        let first_periodic = loop {
            // anything leading into a settled element is off its circuit
            if known.contains_key(&cur) {
                break trail.len();
            }
            if let Some(&i) = pos.get(&cur) {
                break i;
            }
            pos.insert(cur.clone(), trail.len());
            let next = self.next(&cur);
            trail.push(cur);
            cur = next;
        };
        for (i, y) in trail.into_iter().enumerate() {
            known.insert(y, i >= first_periodic);
        }
        known[x]
    }

    /// Conjugates `x` into the set: into the super summit set first, then
    /// stepping until the orbit closes up.
    fn enter(self, x: &NormalForm) -> (NormalForm, BraidWord) {
        let (mut cur, mut conj) = summit(x);
        if self == Summit::Super {
            return (cur, conj);
        }
        let mut seen = HashSet::new();
        // the first repeat is periodic
        while seen.insert(cur.clone()) {
            let c = self.step(&cur);
            conj = conj.multiply(&c.to_word()).expect("same strands");
            cur = conjugate_by_simple(&cur, &c);
        }
        (cur, conj)
    }
}

/// One cyclic sliding step: conjugation by the preferred prefix.
pub fn slide(x: &NormalForm) -> (NormalForm, BraidWord) {
    let c = Summit::Sliding.step(x);
    (conjugate_by_simple(x, &c), c.to_word())
}

/// Conjugates `x` into its ultra summit set, with `c⁻¹ x c` the result.
pub fn ultra_summit(x: &NormalForm) -> (NormalForm, BraidWord) {
    Summit::Ultra.enter(x)
}

/// Conjugates `x` into its set of sliding circuits, with `c⁻¹ x c` the result.
pub fn sliding_summit(x: &NormalForm) -> (NormalForm, BraidWord) {
    Summit::Sliding.enter(x)
}

/// Orbit of a circuit element under the step, with the conjugator of each step.
struct Orbit {
    kind: Summit,
    elems: Vec<NormalForm>,
    steps: Vec<SimpleBraid>,
}

impl Orbit {
    fn of(kind: Summit, x: &NormalForm) -> Self {
        let mut elems = vec![x.clone()];
        let mut steps = Vec::new();
        loop {
            let cur = elems.last().expect("nonempty");
            let c = kind.step(cur);
            steps.push(c);
            let next = conjugate_by_simple(cur, &c);
            if next == *x {
                return Orbit { kind, elems, steps };
            }
            elems.push(next);
        }
    }

    /// Transport of `s` once around the orbit. For summit elements `x` and
    /// `x^s` the transport of `s` is `c(x)⁻¹ · s · c(x^s)`, again simple.
    fn transport(&self, s: SimpleBraid) -> SimpleBraid {
        let n = s.strands();
        let mut s = s;
        for (x, c) in self.elems.iter().zip(&self.steps) {
            let z = conjugate_by_simple(x, &s);
            let cz = self.kind.step(&z);
            let t = NormalForm::from_parts(n, -1, &[c.right_complement().flip(), s, cz]);
            s = match (t.inf(), t.factors()) {
                (0, []) => SimpleBraid::identity(n),
                (0, [f]) => *f,
                (1, []) => SimpleBraid::delta(n),
                _ => unreachable!("transport of a simple conjugator is simple"),
            };
        }
        s
    }
}

/// Smallest simple `ρ ≽ start` with `x^ρ` back in the set, for `x` a circuit
/// element of the orbit.
fn minimal_in_circuit(
    x: &NormalForm,
    x_inv: &NormalForm,
    orbit: &Orbit,
    start: SimpleBraid,
    known: &mut HashMap<NormalForm, bool>,
) -> SimpleBraid {
    let n = x.strands();
    let mut member = |s: &SimpleBraid| {
        let z = conjugate_by_simple(x, s);
        (z.inf(), z.sup()) == (x.inf(), x.sup()) && orbit.kind.is_circuit(&z, known)
    };
    let lower = minimal_simple(x, x_inv, start);
    if member(&lower) {
        return lower;
    }
    // iterated transport is eventually periodic and its periodic points are
    // usually good conjugators, so the meet of those that are bounds the
    // answer from above; Δ always is one
    let mut trail = vec![lower];
    let mut pos = HashMap::from([(lower, 0)]);
    let cycle_start = loop {
        let next = orbit.transport(*trail.last().expect("nonempty"));
        if let Some(&i) = pos.get(&next) {
            break i;
        }
        pos.insert(next, trail.len());
        trail.push(next);
    };
    let mut upper = SimpleBraid::delta(n);
    for q in &trail[cycle_start..] {
        if start.is_prefix_of(q) && member(q) {
            upper = upper.meet(q);
        }
    }
    // exact search over the interval [lower, upper], shortest first; the
    // answer is unique since conjugators into the set are closed under meets
    let mut level = vec![lower];
    let mut seen = HashSet::from([lower]);
    while !level.is_empty() {
        let mut next = Vec::new();
        for s in &level {
            let fin = s.finishing_set();
            for i in 0..n - 1 {
                if fin & (1 << i) != 0 {
                    continue;
                }
                let t = s.then(&SimpleBraid::generator(n, i));
                if t.is_prefix_of(&upper) && seen.insert(t) {
                    next.push(t);
                }
            }
        }
        next.sort();
        if let Some(t) = next.iter().find(|t| member(t)) {
            return *t;
        }
        level = next;
    }
    upper
}

/// Breadth-first enumeration of a summit set from one of its elements.
pub struct SummitSet {
    elements: Vec<NormalForm>,
    index: HashMap<NormalForm, usize>,
    /// `(parent index, simple conjugator)` for every element but the root.
    parent: Vec<Option<(usize, SimpleBraid)>>,
    /// Every explored edge `(from, to, ρ)`, including non-tree edges.
    edges: Vec<(usize, usize, SimpleBraid)>,
    complete: bool,
}

/// Result of a search step: keep going or stop early.
pub(crate) enum Visit {
    Continue,
    Stop,
}

impl SummitSet {
    /// Enumerates the set containing `root` (which must already lie in the
    /// chosen summit set). Stops early when `visit` returns `Stop`; fails with
    /// `BudgetExceeded` once more than `budget` elements have been found.
    pub(crate) fn explore(
        root: NormalForm,
        kind: Summit,
        budget: usize,
        record_edges: bool,
        mut visit: impl FnMut(usize, &NormalForm) -> Visit,
    ) -> Result<Self> {
        let n = root.strands();
        let mut set = SummitSet {
            elements: vec![root.clone()],
            index: HashMap::from([(root, 0)]),
            parent: vec![None],
            edges: Vec::new(),
            complete: false,
        };
        if let Visit::Stop = visit(0, &set.elements[0]) {
            return Ok(set);
        }
        let mut known = HashMap::new();
        let mut head = 0;
        while head < set.elements.len() {
            let x = set.elements[head].clone();
            let x_inv = x.inverse();
            let orbit = (kind != Summit::Super).then(|| Orbit::of(kind, &x));
            let mut seen_rho: Vec<SimpleBraid> = Vec::with_capacity(n);
            for i in 0..n - 1 {
                let a = SimpleBraid::generator(n, i);
                let rho = match &orbit {
                    Some(o) => minimal_in_circuit(&x, &x_inv, o, a, &mut known),
                    None => minimal_simple(&x, &x_inv, a),
                };
                if seen_rho.contains(&rho) {
                    continue;
                }
                seen_rho.push(rho);
                let y = conjugate_by_simple(&x, &rho);
                debug_assert_eq!((y.inf(), y.sup()), (x.inf(), x.sup()));
                let to = match set.index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = set.elements.len();
                        if j >= budget {
                            return Err(BraidError::BudgetExceeded(budget));
                        }
                        set.elements.push(y.clone());
                        set.index.insert(y, j);
                        set.parent.push(Some((head, rho)));
                        if let Visit::Stop = visit(j, &set.elements[j]) {
                            if record_edges {
                                set.edges.push((head, j, rho));
                            }
                            return Ok(set);
                        }
                        j
                    }
                };
                if record_edges {
                    set.edges.push((head, to, rho));
                }
            }
            head += 1;
        }
        set.complete = true;
        Ok(set)
    }

    pub fn elements(&self) -> &[NormalForm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn position(&self, nf: &NormalForm) -> Option<usize> {
        self.index.get(nf).copied()
    }

    /// Conjugator `c` with `c⁻¹ · root · c = elements[i]`.
    pub fn path_to(&self, i: usize) -> BraidWord {
        let n = self.elements[0].strands();
        let mut steps = Vec::new();
        let mut cur = i;
        while let Some((p, rho)) = self.parent[cur] {
            steps.push(rho);
            cur = p;
        }
        let mut w = BraidWord::identity(n);
        for rho in steps.iter().rev() {
            w = w.multiply(&rho.to_word()).expect("same strands");
        }
        w
    }

    /// Elements of the centraliser of the root, one per non-tree edge of the
    /// explored graph. Together with the tree they generate the centraliser
    /// when the set is complete.
    pub fn centralizer_loops(&self) -> Vec<BraidWord> {
        let mut out = Vec::new();
        for &(from, to, rho) in &self.edges {
            if self.parent[to] == Some((from, rho)) {
                continue;
            }
            let w = self
                .path_to(from)
                .multiply(&rho.to_word())
                .and_then(|w| w.multiply(&self.path_to(to).inverse()))
                .expect("same strands");
            if !w.is_empty() {
                out.push(w);
            }
        }
        out
    }
}

/// The full super summit set of `w`, conjugators relative to its first element.
pub fn super_summit_set(w: &BraidWord, budget: usize) -> Result<SummitSet> {
    let nf = NormalForm::of_word(w)?;
    let (root, _) = summit(&nf);
    SummitSet::explore(root, Summit::Super, budget, false, |_, _| Visit::Continue)
}

/// The full ultra summit set of `w`, conjugators relative to its first element.
pub fn ultra_summit_set(w: &BraidWord, budget: usize) -> Result<SummitSet> {
    let nf = NormalForm::of_word(w)?;
    let (root, _) = ultra_summit(&nf);
    SummitSet::explore(root, Summit::Ultra, budget, false, |_, _| Visit::Continue)
}

/// The full set of sliding circuits of `w`, conjugators relative to its first
/// element.
pub fn sliding_circuits(w: &BraidWord, budget: usize) -> Result<SummitSet> {
    let nf = NormalForm::of_word(w)?;
    let (root, _) = sliding_summit(&nf);
    SummitSet::explore(root, Summit::Sliding, budget, false, |_, _| Visit::Continue)
}

/// Generators of the centraliser of `w` modulo `Δ²`: the closed loops of its
/// graph of sliding circuits, transported back to `w`. `None` when the budget is
/// exhausted before the set is complete.
pub fn centralizer_generators(w: &BraidWord, budget: usize) -> Result<Option<Vec<BraidWord>>> {
    let nf = NormalForm::of_word(w)?;
    let (root, c) = sliding_summit(&nf);
    let set = match SummitSet::explore(root, Summit::Sliding, budget, true, |_, _| Visit::Continue)
    {
        Ok(set) => set,
        Err(BraidError::BudgetExceeded(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let c_inv = c.inverse();
    set.centralizer_loops()
        .into_iter()
        .map(|l| c.multiply(&l)?.multiply(&c_inv))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}
