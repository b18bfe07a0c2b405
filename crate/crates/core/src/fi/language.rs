use super::{commensurator, letters_at};
use crate::error::{Error, Result};
use crate::graph::{CoreAutomaton, StallingsGraph};
use crate::words::Letter;

/// The words readable in a core automaton from one state. Every state
/// accepts, so the language is prefix closed and contains non-reduced words.
#[derive(Clone, Copy, Debug)]
pub struct LanguageView<'a> {
    pub core: &'a CoreAutomaton,
    pub start: usize,
}

impl<'a> LanguageView<'a> {
    pub fn new(core: &'a CoreAutomaton, start: usize) -> Self {
        LanguageView { core, start }
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.core.read(self.start, word).is_some()
    }

    /// All accepted words of length at most `max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![(Vec::new(), self.start)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, s) in &layer {
                for (x, t) in letters_at(self.core, *s) {
                    let mut w2: Vec<Letter> = w.clone();
                    w2.push(x);
                    next.push((w2, t));
                }
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            layer = next;
        }
        out
    }
}

/// Outcome of each clause checked by [`validate_extension_language`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LanguageReport {
    /// Transitions come in inverse pairs in the minimal automaton.
    pub involutive: bool,
    /// Every state of the minimal automaton is accepting.
    pub all_accepting: bool,
    /// Every state reads at least two distinct letters.
    pub out_degree: bool,
    /// Prefixes of accepted words are accepted.
    pub prefix_closed: bool,
    /// `u, v` accepted implies `u ū v` accepted.
    pub backtrack: bool,
    /// `u v v̄ w` accepted implies `u w` accepted.
    pub cancellation: bool,
    /// `u a` accepted implies `u a b` accepted for some `b ≠ ā`.
    pub extendable: bool,
    /// The tail word ends with a letter `a` such that `ā` is not accepted.
    pub tail: bool,
}

impl LanguageReport {
    /// The structural clauses on the minimal automaton.
    pub fn automaton(&self) -> bool {
        self.involutive && self.all_accepting && self.out_degree
    }

    pub fn passed(&self) -> bool {
        self.automaton()
            && self.prefix_closed
            && self.backtrack
            && self.cancellation
            && self.extendable
            && self.tail
    }

    /// Clause names paired with outcomes, in a fixed order.
    pub fn clauses(&self) -> [(&'static str, bool); 8] {
        [
            ("involutive", self.involutive),
            ("all-accepting", self.all_accepting),
            ("out-degree", self.out_degree),
            ("prefix-closed", self.prefix_closed),
            ("backtrack", self.backtrack),
            ("cancellation", self.cancellation),
            ("extendable", self.extendable),
            ("tail", self.tail),
        ]
    }
}

/// Word length bound for the enumerated clauses.
const CHECK_LENGTH: usize = 6;

/// Checks that the pair (tail word, core language from the core entry) has
/// the shape every subgroup produces. The automaton clauses are checked on
/// the minimal automaton; the language clauses by enumerating words of
/// length at most 6.
pub fn validate_extension_language(h: &StallingsGraph) -> Result<LanguageReport> {
    if h.is_trivial() {
        return Err(Error::TrivialSubgroup);
    }
    let d = h.decompose();
    let core = CoreAutomaton::new(h, &d);
    let minimal = commensurator(h).core_automaton();
    let k = core.letter_count();

    let mut r = LanguageReport {
        all_accepting: true,
        ..Default::default()
    };
    r.involutive = (0..minimal.state_count()).all(|s| {
        (0..k).all(|c| {
            minimal
                .next(s, c)
                .map_or(true, |t| minimal.next(t, c ^ 1) == Some(s))
        })
    });
    r.out_degree = (0..minimal.state_count()).all(|s| minimal.defined_letters(s).count_ones() >= 2);

    let lang = LanguageView::new(&core, core.entry());
    let words = lang.words_up_to(CHECK_LENGTH);
    r.prefix_closed = words
        .iter()
        .all(|w| (0..w.len()).all(|i| lang.accepts(&w[..i])));
    r.backtrack = words.iter().all(|u| {
        let back: Vec<Letter> = u
            .iter()
            .copied()
            .chain(u.iter().rev().map(|x| x.inverse()))
            .collect();
        words
            .iter()
            .filter(|v| 2 * u.len() + v.len() <= CHECK_LENGTH)
            .all(|v| lang.accepts(&[back.as_slice(), v.as_slice()].concat()))
    });
    r.cancellation = words
        .iter()
        .all(|z| cancellations(z).all(|uw| lang.accepts(&uw)));
    r.extendable = words.iter().filter(|w| !w.is_empty()).all(|w| {
        let back = w[w.len() - 1].inverse().code();
        let end = core.read(core.entry(), w).expect("accepted");
        (0..k).any(|c| c != back && core.next(end, c).is_some())
    });
    r.tail = match d.tail_word.last() {
        None => true,
        Some(a) => !lang.accepts(&[a.inverse()]),
    };
    Ok(r)
}

/// Every `u w` such that `z = u v v̄ w` with `v` nonempty.
fn cancellations(z: &[Letter]) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..z.len()).flat_map(move |i| {
        (1..=(z.len() - i) / 2).filter_map(move |m| {
            let v = &z[i..i + m];
            let vbar = &z[i + m..i + 2 * m];
            let matches = v.iter().rev().zip(vbar).all(|(x, y)| x.inverse() == *y);
            matches.then(|| [&z[..i], &z[i + 2 * m..]].concat())
        })
    })
}
