//! Bounded language enumeration and membership.
//!
//! The engine works bottom up. A *state* is a nonterminal together with a
//! concrete index stack; the words derivable from a sentential form are the
//! concatenations of the words derivable from its items, so per-state word
//! sets (restricted to the length bound) satisfy a system of monotone
//! equations over a finite lattice. A worklist iteration solves the system
//! exactly: derivation cycles that produce nothing new, such as the
//! ε-insertion churn of the closure grammars, simply stop contributing.
//!
//! Word sets are stored per length in packed byte buffers. Joins only pair
//! prefixes with suffix buckets that still fit the length budget, and each
//! rule body re-joins only against words that arrived after its previous
//! visit, so total join work tracks the number of bounded derivations
//! rather than the square of the stored words.
//!
//! Only stacks within `max_stack_depth` exist as states, so the computed
//! sets are exactly the words of length ≤ `max_word_length` derivable
//! without any intermediate stack exceeding the depth bound, matching what
//! a pruned breadth-first search over sentential forms would collect.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

use super::derive::instantiate;
use super::{
    FormItem, GrammarCore, GrammarError, IndexStack, NtId, RhsItem, RuleKind, SententialForm,
};
use crate::word::Word;

/// Caps for the derivation search.
///
/// `max_word_length` and `max_stack_depth` define the space being
/// enumerated. `max_derivation_steps` (total join work) and
/// `max_frontier_size` (total stored words) are safety fuses; tripping
/// either makes the result incomplete.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_word_length: usize,
    pub max_stack_depth: usize,
    pub max_derivation_steps: usize,
    pub max_frontier_size: usize,
}

impl EnumerationBounds {
    /// Comfortable defaults for enumerating all words up to `maxlen`.
    pub fn for_length(maxlen: usize) -> Self {
        EnumerationBounds {
            max_word_length: maxlen,
            max_stack_depth: maxlen + 1,
            max_derivation_steps: 500_000_000,
            max_frontier_size: 50_000_000,
        }
    }
}

/// Outcome of [`enumerate_language`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub words: BTreeSet<Word>,
    /// True when the bounded space was solved to its fixed point; false
    /// when a safety fuse cut the computation short, in which case `words`
    /// is only a subset of the language restricted to the bounds.
    pub complete: bool,
    /// Number of (nonterminal, stack) states the grammar reaches within
    /// the bounds.
    pub states_explored: usize,
}

/// For each nonterminal and stack depth, a lower bound on the number of
/// terminals any complete derivation from it must produce. Stacks are
/// abstracted to their depth, which only admits more derivations, so the
/// bound stays sound; values beyond the word-length budget saturate.
/// States whose bound exceeds the budget derive no word short enough and
/// can be dropped without changing the enumerated set.
struct MinYield {
    table: Vec<Vec<u32>>,
    max_depth: usize,
    infinity: u32,
}

impl MinYield {
    fn compute(grammar: &GrammarCore, max_depth: usize, budget: usize) -> MinYield {
        let infinity = budget as u32 + 1;
        let n = grammar.nonterminals().len();
        let mut table = vec![vec![infinity; max_depth + 1]; n];
        loop {
            let mut changed = false;
            for rule in grammar.rules() {
                let lhs = rule.lhs.0 as usize;
                for depth in 0..=max_depth {
                    let carried_depth = match rule.kind {
                        RuleKind::Copy => depth,
                        RuleKind::Push => {
                            if depth + 1 > max_depth {
                                continue;
                            }
                            depth + 1
                        }
                        RuleKind::Pop(_) => {
                            if depth == 0 {
                                continue;
                            }
                            depth - 1
                        }
                        RuleKind::Empty => {
                            if depth != 0 {
                                continue;
                            }
                            0
                        }
                    };
                    let mut total = 0u32;
                    for item in &rule.rhs {
                        let add = match *item {
                            RhsItem::Terminal(_) => 1,
                            RhsItem::Nonterminal {
                                nt, carries_stack, ..
                            } => {
                                let d = if carries_stack { carried_depth } else { 0 };
                                table[nt.0 as usize][d]
                            }
                        };
                        total = (total + add).min(infinity);
                        if total == infinity {
                            break;
                        }
                    }
                    if total < table[lhs][depth] {
                        table[lhs][depth] = total;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        MinYield {
            table,
            max_depth,
            infinity,
        }
    }

    fn of(&self, nt: NtId, depth: usize) -> u32 {
        if depth > self.max_depth {
            self.infinity
        } else {
            self.table[nt.0 as usize][depth]
        }
    }
}

/// Fixed-stride words packed end to end.
#[derive(Default)]
struct Packed {
    bytes: Vec<u8>,
    count: usize,
}

impl Packed {
    fn word(&self, stride: usize, i: usize) -> &[u8] {
        &self.bytes[i * stride..(i + 1) * stride]
    }

    fn push_pair(&mut self, u: &[u8], v: &[u8]) {
        self.bytes.extend_from_slice(u);
        self.bytes.extend_from_slice(v);
        self.count += 1;
    }

    fn clear(&mut self) {
        self.bytes.clear();
        self.count = 0;
    }

    fn sort_dedup(&mut self, stride: usize, idx: &mut Vec<u32>, rebuild: &mut Vec<u8>) {
        if stride == 0 {
            self.count = self.count.min(1);
            self.bytes.clear();
            return;
        }
        if self.count <= 1 {
            return;
        }
        idx.clear();
        idx.extend(0..self.count as u32);
        let bytes = &self.bytes;
        idx.sort_unstable_by(|&a, &b| {
            bytes[a as usize * stride..][..stride].cmp(&bytes[b as usize * stride..][..stride])
        });
        idx.dedup_by(|a, b| {
            bytes[*a as usize * stride..][..stride] == bytes[*b as usize * stride..][..stride]
        });
        rebuild.clear();
        for &i in idx.iter() {
            rebuild.extend_from_slice(&bytes[i as usize * stride..][..stride]);
        }
        std::mem::swap(&mut self.bytes, rebuild);
        self.count = idx.len();
    }
}

/// Words of one fixed length derivable from one state, packed in arrival
/// order so delta ranges stay stable, plus a lexicographic index for
/// duplicate checks.
#[derive(Default)]
struct Bucket {
    data: Packed,
    sorted: Vec<u32>,
}

impl Bucket {
    fn contains(&self, stride: usize, w: &[u8]) -> bool {
        self.sorted
            .binary_search_by(|&i| self.data.word(stride, i as usize).cmp(w))
            .is_ok()
    }

    /// Folds in sorted, duplicate-free packed words, skipping ones already
    /// present; returns how many were new.
    fn absorb(&mut self, stride: usize, incoming: &Packed, merged: &mut Vec<u32>) -> usize {
        if incoming.count == 0 {
            return 0;
        }
        if stride == 0 {
            if self.data.count == 0 {
                self.data.count = 1;
                self.sorted.push(0);
                return 1;
            }
            return 0;
        }
        merged.clear();
        let mut oi = 0;
        let mut ni = 0;
        let mut added = 0;
        while oi < self.sorted.len() || ni < incoming.count {
            if oi == self.sorted.len() {
                let pos = self.data.count as u32;
                self.data.bytes.extend_from_slice(incoming.word(stride, ni));
                self.data.count += 1;
                merged.push(pos);
                added += 1;
                ni += 1;
                continue;
            }
            if ni == incoming.count {
                merged.push(self.sorted[oi]);
                oi += 1;
                continue;
            }
            let old = self.data.word(stride, self.sorted[oi] as usize);
            match old.cmp(incoming.word(stride, ni)) {
                Ordering::Less => {
                    merged.push(self.sorted[oi]);
                    oi += 1;
                }
                Ordering::Equal => {
                    ni += 1;
                }
                Ordering::Greater => {
                    let pos = self.data.count as u32;
                    self.data.bytes.extend_from_slice(incoming.word(stride, ni));
                    self.data.count += 1;
                    merged.push(pos);
                    added += 1;
                    ni += 1;
                }
            }
        }
        std::mem::swap(&mut self.sorted, merged);
        added
    }
}

/// One item of an instantiated right-hand side.
#[derive(Clone, Copy)]
enum Item {
    Letter(u8),
    Child { id: usize, min: u32 },
}

/// One instantiated rule body. `marks[q][m]` counts the length-`m` words
/// of the child at position `q` that earlier visits already joined, so a
/// visit pairs only against what arrived since.
struct Body {
    items: Vec<Item>,
    /// minimum total length of whatever the items after position q derive
    suffix_min: Vec<u32>,
    marks: Vec<Vec<u32>>,
    primed: bool,
}

struct Engine<'a> {
    grammar: &'a GrammarCore,
    bounds: EnumerationBounds,
    minyield: MinYield,
    ids: HashMap<(NtId, IndexStack), usize>,
    bodies: Vec<Vec<Body>>,
    /// states whose yields feed each state's equations
    dependents: Vec<Vec<usize>>,
    /// per state, per word length, the derivable words found so far
    states: Vec<Vec<Bucket>>,
    out: Vec<Packed>,
    cur: Vec<Packed>,
    nxt: Vec<Packed>,
    idx: Vec<u32>,
    rebuild: Vec<u8>,
    merged: Vec<u32>,
    work: usize,
    stored: usize,
    complete: bool,
}

impl<'a> Engine<'a> {
    fn new(grammar: &'a GrammarCore, bounds: EnumerationBounds) -> Self {
        let minyield = MinYield::compute(grammar, bounds.max_stack_depth, bounds.max_word_length);
        let scratch = || {
            (0..=bounds.max_word_length)
                .map(|_| Packed::default())
                .collect()
        };
        Engine {
            grammar,
            bounds,
            minyield,
            ids: HashMap::new(),
            bodies: Vec::new(),
            dependents: Vec::new(),
            states: Vec::new(),
            out: scratch(),
            cur: scratch(),
            nxt: scratch(),
            idx: Vec::new(),
            rebuild: Vec::new(),
            merged: Vec::new(),
            work: 0,
            stored: 0,
            complete: true,
        }
    }

    /// Interns the state and, first time around, its rule instantiations
    /// and the states they reference. `None` for states that provably
    /// derive no word within the length bound.
    fn state(&mut self, nt: NtId, stack: IndexStack) -> Option<usize> {
        let cap = self.bounds.max_word_length as u32;
        if stack.depth() > self.bounds.max_stack_depth || self.minyield.of(nt, stack.depth()) > cap
        {
            return None;
        }
        if let Some(&id) = self.ids.get(&(nt, stack.clone())) {
            return Some(id);
        }
        let id = self.bodies.len();
        self.ids.insert((nt, stack.clone()), id);
        self.bodies.push(Vec::new());
        self.dependents.push(Vec::new());
        self.states.push(
            (0..=self.bounds.max_word_length)
                .map(|_| Bucket::default())
                .collect(),
        );

        let mut bodies = Vec::new();
        let rules: Vec<_> = self.grammar.rules_for(nt).cloned().collect();
        'rules: for rule in &rules {
            let Some(form_items) = instantiate(rule, &stack) else {
                continue;
            };
            let mut items = Vec::with_capacity(form_items.len());
            let mut total_min = 0u32;
            for item in form_items {
                match item {
                    FormItem::Terminal(t) => {
                        items.push(Item::Letter(self.grammar.terminal_letter(t)));
                        total_min += 1;
                    }
                    FormItem::Nonterminal(child_nt, child_stack) => {
                        let min = self.minyield.of(child_nt, child_stack.depth());
                        let Some(child) = self.state(child_nt, child_stack) else {
                            continue 'rules;
                        };
                        items.push(Item::Child { id: child, min });
                        total_min += min;
                    }
                }
            }
            if total_min > cap {
                continue;
            }
            let mut suffix_min = vec![0u32; items.len()];
            let mut acc = 0u32;
            for q in (0..items.len()).rev() {
                suffix_min[q] = acc;
                acc += match items[q] {
                    Item::Letter(_) => 1,
                    Item::Child { min, .. } => min,
                };
            }
            let marks = items
                .iter()
                .map(|it| match it {
                    Item::Child { .. } => vec![0u32; self.bounds.max_word_length + 1],
                    Item::Letter(_) => Vec::new(),
                })
                .collect();
            bodies.push(Body {
                items,
                suffix_min,
                marks,
                primed: false,
            });
        }
        for body in &bodies {
            for item in &body.items {
                if let Item::Child { id: child, .. } = *item {
                    if !self.dependents[child].contains(&id) {
                        self.dependents[child].push(id);
                    }
                }
            }
        }
        self.bodies[id] = bodies;
        Some(id)
    }

    /// Re-evaluates one state's equations against whatever its children
    /// gained since the last visit. Returns whether the state's set grew.
    fn evaluate(&mut self, id: usize) -> bool {
        let cap = self.bounds.max_word_length;
        let mut bodies = std::mem::take(&mut self.bodies[id]);
        for b in &mut self.out {
            b.clear();
        }
        let mut tripped = false;
        'bodies: for body in &mut bodies {
            self.work += 1;
            let child_free = body.items.iter().all(|it| matches!(it, Item::Letter(_)));
            if child_free {
                if !body.primed {
                    body.primed = true;
                    let len = body.items.len();
                    for item in &body.items {
                        if let Item::Letter(l) = item {
                            self.out[len].bytes.push(*l);
                        }
                    }
                    self.out[len].count += 1;
                }
                continue;
            }
            let mut any = false;
            for (q, item) in body.items.iter().enumerate() {
                if let Item::Child { id: c, .. } = *item {
                    if (0..=cap).any(|m| self.states[c][m].data.count as u32 > body.marks[q][m]) {
                        any = true;
                    } else {
                        continue;
                    }
                    if pass(
                        &self.states,
                        body,
                        q,
                        cap,
                        &mut self.cur,
                        &mut self.nxt,
                        &mut self.idx,
                        &mut self.rebuild,
                        &mut self.out,
                        &mut self.work,
                        self.bounds.max_derivation_steps,
                    ) {
                        tripped = true;
                        break 'bodies;
                    }
                }
            }
            if !any {
                continue;
            }
            for (q, item) in body.items.iter().enumerate() {
                if let Item::Child { id: c, .. } = *item {
                    for m in 0..=cap {
                        body.marks[q][m] = self.states[c][m].data.count as u32;
                    }
                }
            }
        }
        self.bodies[id] = bodies;
        let mut grown = false;
        for m in 0..=cap {
            self.out[m].sort_dedup(m, &mut self.idx, &mut self.rebuild);
            let added = self.states[id][m].absorb(m, &self.out[m], &mut self.merged);
            if added > 0 {
                grown = true;
                self.stored += added;
            }
        }
        if tripped
            || self.work > self.bounds.max_derivation_steps
            || self.stored > self.bounds.max_frontier_size
        {
            self.complete = false;
        }
        grown
    }

    /// Solves the yield equations to their least fixed point, or until a
    /// fuse trips.
    fn solve(&mut self) {
        let n = self.bodies.len();
        let mut queued = vec![true; n];
        let mut worklist: VecDeque<usize> = (0..n).rev().collect();
        while let Some(id) = worklist.pop_front() {
            queued[id] = false;
            if self.evaluate(id) {
                for i in 0..self.dependents[id].len() {
                    let dep = self.dependents[id][i];
                    if !queued[dep] {
                        queued[dep] = true;
                        worklist.push_back(dep);
                    }
                }
            }
            if !self.complete {
                return;
            }
        }
    }

    fn words_of(&self, id: usize) -> BTreeSet<Word> {
        let mut set = BTreeSet::new();
        for (m, bucket) in self.states[id].iter().enumerate() {
            for i in 0..bucket.data.count {
                set.insert(Word::from_letters(bucket.data.word(m, i).to_vec()));
            }
        }
        set
    }
}

/// One semi-naive join pass over a body: position `p` contributes only its
/// fresh words, positions left of it their full sets, positions right of
/// it only what previous visits had seen, so every combination is formed
/// exactly once across visits. Results land in `out`; returns true if the
/// work fuse tripped.
#[allow(clippy::too_many_arguments)]
fn pass(
    states: &[Vec<Bucket>],
    body: &Body,
    p: usize,
    cap: usize,
    cur: &mut Vec<Packed>,
    nxt: &mut Vec<Packed>,
    idx: &mut Vec<u32>,
    rebuild: &mut Vec<u8>,
    out: &mut [Packed],
    work: &mut usize,
    fuse: usize,
) -> bool {
    for b in cur.iter_mut() {
        b.clear();
    }
    cur[0].count = 1;
    for (q, item) in body.items.iter().enumerate() {
        for b in nxt.iter_mut() {
            b.clear();
        }
        let after = body.suffix_min[q] as usize;
        match *item {
            Item::Letter(l) => {
                for len in 0..=cap {
                    if len + 1 + after > cap {
                        break;
                    }
                    if cur[len].count == 0 {
                        continue;
                    }
                    *work += cur[len].count;
                    for i in 0..cur[len].count {
                        let target = &mut nxt[len + 1];
                        target.bytes.extend_from_slice(cur[len].word(len, i));
                        target.bytes.push(l);
                        target.count += 1;
                    }
                }
            }
            Item::Child { id: c, .. } => {
                for len in 0..=cap {
                    if len + after > cap {
                        break;
                    }
                    if cur[len].count == 0 {
                        continue;
                    }
                    for m in 0..=(cap - len - after) {
                        let bucket = &states[c][m];
                        let total = bucket.data.count as u32;
                        let mark = body.marks[q][m];
                        let (lo, hi) = match q.cmp(&p) {
                            Ordering::Less => (0, total),
                            Ordering::Equal => (mark, total),
                            Ordering::Greater => (0, mark),
                        };
                        if lo >= hi {
                            continue;
                        }
                        *work += (hi - lo) as usize * cur[len].count;
                        if *work > fuse {
                            return true;
                        }
                        for vi in lo..hi {
                            let v = bucket.data.word(m, vi as usize);
                            for i in 0..cur[len].count {
                                nxt[len + m].push_pair(cur[len].word(len, i), v);
                            }
                        }
                    }
                }
            }
        }
        let mut alive = false;
        for (len, b) in nxt.iter_mut().enumerate() {
            b.sort_dedup(len, idx, rebuild);
            alive |= b.count > 0;
        }
        std::mem::swap(cur, nxt);
        if !alive {
            return false;
        }
    }
    for (len, b) in cur.iter().enumerate() {
        if b.count > 0 {
            out[len].bytes.extend_from_slice(&b.bytes);
            out[len].count += b.count;
        }
    }
    false
}

fn run(grammar: &GrammarCore, bounds: EnumerationBounds) -> (Engine<'_>, Option<usize>) {
    let mut engine = Engine::new(grammar, bounds);
    let root = engine.state(grammar.start(), IndexStack::empty());
    engine.solve();
    (engine, root)
}

/// Enumerates every word of length at most `bounds.max_word_length`
/// derivable without any intermediate stack exceeding
/// `bounds.max_stack_depth`.
pub fn enumerate_language(grammar: &GrammarCore, bounds: &EnumerationBounds) -> EnumerationResult {
    let (engine, root) = run(grammar, *bounds);
    EnumerationResult {
        words: root.map(|r| engine.words_of(r)).unwrap_or_default(),
        complete: engine.complete,
        states_explored: engine.bodies.len(),
    }
}

/// Decides whether `word` is derivable within `bounds`.
///
/// Returns `Err(IncompleteSearch)` if a safety fuse tripped before the
/// word was found, since absence then proves nothing.
pub fn member(
    grammar: &GrammarCore,
    word: &Word,
    bounds: &EnumerationBounds,
) -> Result<bool, GrammarError> {
    let mut bounds = *bounds;
    bounds.max_word_length = bounds.max_word_length.min(word.len());
    let (engine, root) = run(grammar, bounds);
    let found = root.is_some_and(|r| {
        word.len() <= bounds.max_word_length
            && engine.states[r][word.len()].contains(word.len(), word.letters())
    });
    if found {
        Ok(true)
    } else if engine.complete {
        Ok(false)
    } else {
        Err(GrammarError::IncompleteSearch)
    }
}

/// The words a whole sentential form can still derive within `bounds`;
/// mainly a debugging aid.
pub fn form_language(
    grammar: &GrammarCore,
    form: &SententialForm,
    bounds: &EnumerationBounds,
) -> Result<BTreeSet<Word>, GrammarError> {
    enum Piece {
        Letter(u8),
        Child(usize),
    }
    let mut engine = Engine::new(grammar, *bounds);
    let mut pieces = Vec::with_capacity(form.len());
    for item in form.items() {
        match item {
            FormItem::Terminal(t) => pieces.push(Some(Piece::Letter(grammar.terminal_letter(*t)))),
            FormItem::Nonterminal(nt, stack) => {
                pieces.push(engine.state(*nt, stack.clone()).map(Piece::Child))
            }
        }
    }
    engine.solve();
    if !engine.complete {
        return Err(GrammarError::IncompleteSearch);
    }
    let cap = bounds.max_word_length;
    let mut partial: Vec<Vec<u8>> = vec![Vec::new()];
    for piece in pieces {
        let Some(piece) = piece else {
            // an item that derives no short-enough word starves the form
            return Ok(BTreeSet::new());
        };
        let mut next: Vec<Vec<u8>> = Vec::new();
        match piece {
            Piece::Letter(l) => {
                for mut u in partial {
                    if u.len() < cap {
                        u.push(l);
                        next.push(u);
                    }
                }
            }
            Piece::Child(child) => {
                let child_words = engine.words_of(child);
                for u in &partial {
                    for v in &child_words {
                        if u.len() + v.len() <= cap {
                            let mut w = u.clone();
                            w.extend_from_slice(v.letters());
                            next.push(w);
                        }
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        partial = next;
    }
    Ok(partial.into_iter().map(Word::from_letters).collect())
}
