//! Coloured binary trees and forests.
//!
//! A [`Tree`] is stored as its preorder code: one byte per vertex, [`LEAF`]
//! for a leaf and the colour index for a caret. Structural equality of codes
//! is equality of raw diagrams; relation-aware equality lives elsewhere.
//!
//! Composition `f ∘ g` puts `g` on top of `f`: the j-th leaf of `f` is grafted
//! to the j-th root of `g`.

use crate::error::{syntax, FskError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Code byte used for a leaf.
pub const LEAF: u8 = u8::MAX;

/// Maximum number of colours a palette can hold.
pub const MAX_COLOURS: usize = LEAF as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Colour(pub u8);

impl Colour {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Colour names, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Palette {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl Palette {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut out = Palette::default();
        for n in names {
            out.push(n.as_ref())?;
        }
        Ok(out)
    }

    /// Palette `a, b, c, …` with `k` colours.
    pub fn alphabetic(k: usize) -> Self {
        let names = (0..k)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("c{i}x")
                }
            })
            .collect();
        Palette { names }
    }

    pub fn push(&mut self, name: &str) -> Result<Colour> {
        if !valid_name(name) {
            return Err(FskError::Invalid(format!("bad colour name `{name}`")));
        }
        if self.lookup(name).is_some() {
            return Err(FskError::Invalid(format!("colour `{name}` declared twice")));
        }
        if self.names.len() >= MAX_COLOURS {
            return Err(FskError::Invalid("too many colours".into()));
        }
        self.names.push(name.to_string());
        Ok(Colour((self.names.len() - 1) as u8))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: Colour) -> &str {
        &self.names[c.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Colour> {
        self.names.iter().position(|n| n == name).map(|i| Colour(i as u8))
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour> {
        (0..self.names.len()).map(|i| Colour(i as u8))
    }
}

/// End (exclusive) of the subtree starting at `pos`.
pub fn subtree_end(code: &[u8], pos: usize) -> usize {
    let mut need = 1usize;
    let mut i = pos;
    while need > 0 {
        if code[i] == LEAF {
            need -= 1;
        } else {
            need += 1;
        }
        i += 1;
    }
    i
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tree {
    code: Vec<u8>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&Palette::alphabetic(MAX_COLOURS.min(26))))
    }
}

impl Tree {
    /// The trivial tree `I`.
    pub fn leaf() -> Self {
        Tree { code: vec![LEAF] }
    }

    /// `Y_c`.
    pub fn caret(c: Colour) -> Self {
        Tree { code: vec![c.0, LEAF, LEAF] }
    }

    pub fn node(c: Colour, left: &Tree, right: &Tree) -> Self {
        let mut code = Vec::with_capacity(1 + left.code.len() + right.code.len());
        code.push(c.0);
        code.extend_from_slice(&left.code);
        code.extend_from_slice(&right.code);
        Tree { code }
    }

    pub fn from_code(code: Vec<u8>) -> Result<Self> {
        if code.is_empty() {
            return Err(FskError::Invalid("empty tree code".into()));
        }
        let mut need = 1usize;
        for (i, &b) in code.iter().enumerate() {
            if need == 0 {
                return Err(FskError::Invalid(format!("trailing data at {i}")));
            }
            if b == LEAF {
                need -= 1;
            } else {
                need += 1;
            }
        }
        if need != 0 {
            return Err(FskError::Invalid("truncated tree code".into()));
        }
        Ok(Tree { code })
    }

    pub(crate) fn from_code_unchecked(code: Vec<u8>) -> Self {
        debug_assert!(Tree::from_code(code.clone()).is_ok());
        Tree { code }
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn carets(&self) -> usize {
        self.code.len() / 2
    }

    pub fn leaves(&self) -> usize {
        self.code.len() / 2 + 1
    }

    pub fn is_leaf(&self) -> bool {
        self.code.len() == 1
    }

    pub fn root_colour(&self) -> Option<Colour> {
        match self.code[0] {
            LEAF => None,
            c => Some(Colour(c)),
        }
    }

    pub fn children(&self) -> Option<(Tree, Tree)> {
        self.root_colour()?;
        let mid = subtree_end(&self.code, 1);
        Some((
            Tree { code: self.code[1..mid].to_vec() },
            Tree { code: self.code[mid..].to_vec() },
        ))
    }

    /// Whether every caret has colour `c`.
    pub fn is_monochromatic(&self, c: Colour) -> bool {
        self.code.iter().all(|&b| b == LEAF || b == c.0)
    }

    /// The same shape with every caret recoloured `c`.
    pub fn recolour(&self, c: Colour) -> Tree {
        Tree { code: self.code.iter().map(|&b| if b == LEAF { LEAF } else { c.0 }).collect() }
    }

    /// Replace the leaves, left to right, by `tops`.
    pub fn graft(&self, tops: &[Tree]) -> Tree {
        debug_assert_eq!(tops.len(), self.leaves());
        let mut code = Vec::with_capacity(self.code.len() + tops.iter().map(|t| t.code.len()).sum::<usize>());
        let mut k = 0;
        for &b in &self.code {
            if b == LEAF {
                code.extend_from_slice(&tops[k].code);
                k += 1;
            } else {
                code.push(b);
            }
        }
        Tree { code }
    }

    /// Attach a caret of colour `c` at leaf `i` (1-based).
    pub fn attach(&self, c: Colour, i: usize) -> Result<Tree> {
        let pos = self
            .leaf_positions()
            .nth(i.wrapping_sub(1))
            .ok_or(FskError::IndexOutOfRange { index: i, bound: self.leaves() })?;
        let mut code = Vec::with_capacity(self.code.len() + 2);
        code.extend_from_slice(&self.code[..pos]);
        code.extend_from_slice(&[c.0, LEAF, LEAF]);
        code.extend_from_slice(&self.code[pos + 1..]);
        Ok(Tree { code })
    }

    /// Code positions of the leaves, left to right.
    pub fn leaf_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.code.iter().enumerate().filter(|(_, &b)| b == LEAF).map(|(i, _)| i)
    }

    /// Code positions of carets whose two children are both leaves, with the
    /// 1-based index of the left leaf.
    pub fn exposed_carets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut leaf_no = 0;
        for (i, &b) in self.code.iter().enumerate() {
            if b == LEAF {
                leaf_no += 1;
            } else if self.code.get(i + 1) == Some(&LEAF)
                && self.code.get(i + 2) == Some(&LEAF)
            {
                out.push((i, leaf_no + 1));
            }
        }
        out
    }

    /// Remove the exposed caret at code position `pos`.
    pub fn collapse(&self, pos: usize) -> Tree {
        debug_assert!(self.code[pos] != LEAF && self.code[pos + 1] == LEAF && self.code[pos + 2] == LEAF);
        let mut code = Vec::with_capacity(self.code.len() - 2);
        code.extend_from_slice(&self.code[..pos]);
        code.push(LEAF);
        code.extend_from_slice(&self.code[pos + 3..]);
        Tree { code }
    }

    pub fn path_to_pos(&self, path: &[Step]) -> Option<usize> {
        let mut pos = 0;
        for s in path {
            if self.code[pos] == LEAF {
                return None;
            }
            pos = match s {
                Step::L => pos + 1,
                Step::R => subtree_end(&self.code, pos + 1),
            };
        }
        Some(pos)
    }

    pub fn pos_to_path(&self, target: usize) -> Vec<Step> {
        let mut path = Vec::new();
        let mut pos = 0;
        while pos != target {
            let mid = subtree_end(&self.code, pos + 1);
            if target < mid {
                path.push(Step::L);
                pos += 1;
            } else {
                path.push(Step::R);
                pos = mid;
            }
        }
        path
    }

    /// If `pattern` embeds at code position `pos`, push the hanging subtree
    /// ranges (one per pattern leaf) into `hang` and return true.
    pub fn match_at(&self, pos: usize, pattern: &Tree, hang: &mut Vec<(usize, usize)>) -> bool {
        match_code(&self.code, pos, &pattern.code, hang)
    }

    /// Positions where `pattern` occurs, in preorder.
    pub fn occurrences(&self, pattern: &Tree) -> Vec<usize> {
        let mut hang = Vec::new();
        (0..self.code.len())
            .filter(|&p| {
                hang.clear();
                self.code[p] == pattern.code[0] && self.match_at(p, pattern, &mut hang)
            })
            .collect()
    }

    /// Replace the `u`-prefix at `pos` by `v`, reattaching the hanging
    /// subtrees in order. `None` if `u` does not occur at `pos`.
    pub fn rewrite(&self, pos: usize, u: &Tree, v: &Tree) -> Option<Tree> {
        let mut hang = Vec::new();
        if pos >= self.code.len() || !self.match_at(pos, u, &mut hang) {
            return None;
        }
        Some(self.splice(pos, &hang, v))
    }

    /// Build the tree with the subtree at `pos` replaced by `v` whose leaves
    /// carry the given hanging ranges of `self`.
    pub(crate) fn splice(&self, pos: usize, hang: &[(usize, usize)], v: &Tree) -> Tree {
        let end = hang.last().map(|h| h.1).unwrap_or(pos + 1);
        let mut code = Vec::with_capacity(self.code.len());
        code.extend_from_slice(&self.code[..pos]);
        let mut k = 0;
        for &b in &v.code {
            if b == LEAF {
                let (s, e) = hang[k];
                code.extend_from_slice(&self.code[s..e]);
                k += 1;
            } else {
                code.push(b);
            }
        }
        code.extend_from_slice(&self.code[end..]);
        Tree { code }
    }

    /// Raw division: `h` with `self ∘ h = t` exactly.
    pub fn divide(&self, t: &Tree) -> Option<Forest> {
        let mut hang = Vec::new();
        if !match_code(&t.code, 0, &self.code, &mut hang) {
            return None;
        }
        Some(Forest {
            trees: hang.iter().map(|&(s, e)| Tree { code: t.code[s..e].to_vec() }).collect(),
        })
    }

    pub fn render(&self, palette: &Palette) -> String {
        let mut out = String::new();
        render_into(&self.code, 0, palette, &mut out);
        out
    }

    pub fn parse(text: &str, palette: &Palette) -> Result<Tree> {
        let mut p = LiteralParser::new(text, palette);
        let t = p.tree()?;
        p.end()?;
        Ok(t)
    }

    /// Shape obtained by forgetting colours, as a code with every caret 0.
    pub fn shape_code(&self) -> Vec<u8> {
        self.code.iter().map(|&b| if b == LEAF { LEAF } else { 0 }).collect()
    }
}

fn match_code(code: &[u8], pos: usize, pat: &[u8], hang: &mut Vec<(usize, usize)>) -> bool {
    let mut i = pos;
    for &b in pat {
        if i >= code.len() {
            return false;
        }
        if b == LEAF {
            let e = subtree_end(code, i);
            hang.push((i, e));
            i = e;
        } else {
            if code[i] != b {
                return false;
            }
            i += 1;
        }
    }
    true
}

fn render_into(code: &[u8], pos: usize, palette: &Palette, out: &mut String) -> usize {
    if code[pos] == LEAF {
        out.push('I');
        return pos + 1;
    }
    let c = Colour(code[pos]);
    if c.index() < palette.len() {
        out.push_str(palette.name(c));
    } else {
        out.push_str(&format!("#{}", c.0));
    }
    out.push('(');
    let mid = render_into(code, pos + 1, palette, out);
    out.push(',');
    let end = render_into(code, mid, palette, out);
    out.push(')');
    end
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub tree_index: usize,
    pub path: Vec<Step>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.trees).finish()
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest { trees: vec![t] }
    }
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Result<Self> {
        if trees.is_empty() {
            return Err(FskError::Invalid("a forest needs at least one tree".into()));
        }
        Ok(Forest { trees })
    }

    /// `I^{⊗n}`.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1);
        Forest { trees: vec![Tree::leaf(); n] }
    }

    /// `c_{j,n} = I^{⊗j−1} ⊗ Y_c ⊗ I^{⊗n−j}`.
    pub fn elementary(c: Colour, j: usize, n: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(FskError::IndexOutOfRange { index: j, bound: n });
        }
        let mut f = Forest::trivial(n);
        f.trees[j - 1] = Tree::caret(c);
        Ok(f)
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.trees
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(Tree::leaves).sum()
    }

    pub fn carets(&self) -> usize {
        self.trees.iter().map(Tree::carets).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(Tree::is_leaf)
    }

    /// `self ∘ g`: `g` stacked on top of `self`.
    pub fn compose(&self, g: &Forest) -> Result<Forest> {
        if self.leaves() != g.roots() {
            return Err(FskError::Arity { left: self.leaves(), right: g.roots() });
        }
        let mut k = 0;
        let trees = self
            .trees
            .iter()
            .map(|t| {
                let n = t.leaves();
                let out = t.graft(&g.trees[k..k + n]);
                k += n;
                out
            })
            .collect();
        Ok(Forest { trees })
    }

    pub fn tensor(&self, g: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend_from_slice(&g.trees);
        Forest { trees }
    }

    pub fn find_occurrences(&self, u: &Tree) -> Vec<Occurrence> {
        let mut out = Vec::new();
        if u.is_leaf() {
            return out;
        }
        for (i, t) in self.trees.iter().enumerate() {
            for pos in t.occurrences(u) {
                out.push(Occurrence { tree_index: i, path: t.pos_to_path(pos) });
            }
        }
        out
    }

    pub fn rewrite_at(&self, site: &Occurrence, u: &Tree, v: &Tree) -> Result<Forest> {
        if u.leaves() != v.leaves() {
            return Err(FskError::LeafMismatch { lhs: u.leaves(), rhs: v.leaves() });
        }
        let t = self.trees.get(site.tree_index).ok_or(FskError::NotPresent)?;
        let pos = t.path_to_pos(&site.path).ok_or(FskError::NotPresent)?;
        let nt = t.rewrite(pos, u, v).ok_or(FskError::NotPresent)?;
        let mut trees = self.trees.clone();
        trees[site.tree_index] = nt;
        Ok(Forest { trees })
    }

    /// Raw division: `h` with `self ∘ h = g` exactly.
    pub fn divide(&self, g: &Forest) -> Option<Forest> {
        if self.roots() != g.roots() {
            return None;
        }
        let mut trees = Vec::with_capacity(self.leaves());
        for (f, t) in self.trees.iter().zip(&g.trees) {
            trees.extend(f.divide(t)?.trees);
        }
        Some(Forest { trees })
    }

    pub fn render(&self, palette: &Palette) -> String {
        let parts: Vec<String> = self.trees.iter().map(|t| t.render(palette)).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn parse(text: &str, palette: &Palette) -> Result<Forest> {
        let mut p = LiteralParser::new(text, palette);
        let f = p.forest()?;
        p.end()?;
        Ok(f)
    }
}

/// A monoid letter `c_i`: a caret of colour `c` at the i-th root (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub colour: Colour,
    pub index: usize,
}

impl Letter {
    pub fn new(colour: Colour, index: usize) -> Self {
        Letter { colour, index }
    }

    pub fn shifted(self, by: usize) -> Self {
        Letter { colour: self.colour, index: self.index + by }
    }

    pub fn render(&self, palette: &Palette) -> String {
        format!("{}{}", palette.name(self.colour), self.index)
    }
}

pub type Word = Vec<Letter>;

pub fn render_word(w: &[Letter], palette: &Palette) -> String {
    w.iter().map(|l| l.render(palette)).collect::<Vec<_>>().join(" ")
}

/// Split a token `name<digits>` against the palette.
pub fn parse_letter(tok: &str, palette: &Palette) -> Result<Letter> {
    let mut found = None;
    for (i, _) in tok.char_indices().skip(1) {
        let (name, digits) = tok.split_at(i);
        if digits.chars().all(|c| c.is_ascii_digit()) {
            if let (Some(c), Ok(k)) = (palette.lookup(name), digits.parse::<usize>()) {
                if found.is_some() {
                    return Err(FskError::Invalid(format!("ambiguous letter `{tok}`")));
                }
                found = Some(Letter::new(c, k));
            }
        }
    }
    match found {
        Some(l) if l.index >= 1 => Ok(l),
        Some(_) => Err(FskError::Invalid(format!("letter `{tok}` has index 0"))),
        None => {
            let name = tok.trim_end_matches(|c: char| c.is_ascii_digit());
            if name.len() == tok.len() {
                Err(FskError::Invalid(format!("letter `{tok}` lacks an index")))
            } else {
                Err(FskError::UnknownColour(name.to_string()))
            }
        }
    }
}

pub fn parse_word(text: &str, palette: &Palette) -> Result<Word> {
    text.split_whitespace().map(|t| parse_letter(t, palette)).collect()
}

/// Stack the letters: the k-th letter `c_{i_k}` is a caret at leaf `i_k`
/// of the tree built so far.
pub fn tree_from_word(word: &[Letter]) -> Result<Tree> {
    let mut t = Tree::leaf();
    for (k, l) in word.iter().enumerate() {
        if l.index == 0 || l.index > k + 1 {
            return Err(FskError::WordIndex { position: k + 1, index: l.index });
        }
        t = t.attach(l.colour, l.index)?;
    }
    Ok(t)
}

/// Canonical word: carets layer by layer from the root, left to right.
pub fn word_from_tree(t: &Tree) -> Word {
    let code = t.code();
    // frontier of (code position, depth)
    let mut frontier: Vec<(usize, usize)> = vec![(0, 0)];
    let mut out = Vec::with_capacity(t.carets());
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (k, &(pos, d)) in frontier.iter().enumerate() {
            if code[pos] != LEAF && best.map_or(true, |(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        let Some((k, d)) = best else { break };
        let pos = frontier[k].0;
        out.push(Letter::new(Colour(code[pos]), k + 1));
        let mid = subtree_end(code, pos + 1);
        frontier[k] = (pos + 1, d + 1);
        frontier.insert(k + 1, (mid, d + 1));
    }
    out
}

/// Sort key of the canonical representative order.
pub fn canonical_key(t: &Tree) -> (usize, Word) {
    (t.carets(), word_from_tree(t))
}

/// All tree shapes with `n` carets, as codes with caret byte 0.
pub fn shapes(n: usize) -> Vec<Vec<u8>> {
    let mut memo: Vec<Vec<Vec<u8>>> = vec![vec![vec![LEAF]]];
    for m in 1..=n {
        let mut cur = Vec::new();
        for l in 0..m {
            for a in &memo[l] {
                for b in &memo[m - 1 - l] {
                    let mut c = Vec::with_capacity(2 * m + 1);
                    c.push(0);
                    c.extend_from_slice(a);
                    c.extend_from_slice(b);
                    cur.push(c);
                }
            }
        }
        memo.push(cur);
    }
    memo.swap_remove(n)
}

/// All colourings of a shape with `k` colours, in odometer order.
pub fn colourings(shape: &[u8], k: usize) -> Vec<Tree> {
    let carets: Vec<usize> = shape.iter().enumerate().filter(|(_, &b)| b != LEAF).map(|(i, _)| i).collect();
    let total = k.pow(carets.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut code = shape.to_vec();
    for mut n in 0..total {
        for &p in carets.iter().rev() {
            code[p] = (n % k) as u8;
            n /= k;
        }
        out.push(Tree { code: code.clone() });
    }
    out
}

/// All trees with exactly `n` carets over `k` colours.
pub fn all_trees(n: usize, k: usize) -> Vec<Tree> {
    shapes(n).iter().flat_map(|s| colourings(s, k)).collect()
}

struct LiteralParser<'a> {
    src: &'a str,
    pos: usize,
    palette: &'a Palette,
}

impl<'a> LiteralParser<'a> {
    fn new(src: &'a str, palette: &'a Palette) -> Self {
        LiteralParser { src, pos: 0, palette }
    }

    fn err(&self, msg: impl Into<String>) -> FskError {
        syntax(1, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, ch: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{ch}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a tree"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn tree(&mut self) -> Result<Tree> {
        let start = self.pos;
        let id = self.ident()?;
        if id == "I" {
            return Ok(Tree::leaf());
        }
        let c = self.palette.lookup(id).ok_or_else(|| {
            let mut e = self.err(format!("unknown colour `{id}`"));
            if let FskError::Syntax { col, .. } = &mut e {
                *col = start + 1;
            }
            e
        })?;
        self.eat('(')?;
        let l = self.tree()?;
        self.eat(',')?;
        let r = self.tree()?;
        self.eat(')')?;
        Ok(Tree::node(c, &l, &r))
    }

    fn forest(&mut self) -> Result<Forest> {
        self.eat('[')?;
        let mut trees = vec![self.tree()?];
        loop {
            self.skip_ws();
            if self.src[self.pos..].starts_with(']') {
                self.pos += 1;
                break;
            }
            self.eat(',')?;
            trees.push(self.tree()?);
        }
        Forest::new(trees)
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pal() -> Palette {
        Palette::alphabetic(2)
    }

    #[test]
    fn vines_from_words() {
        let p = pal();
        let left = tree_from_word(&parse_word("a1 a1", &p).unwrap()).unwrap();
        assert_eq!(left.render(&p), "a(a(I,I),I)");
        let right = tree_from_word(&parse_word("b1 b2", &p).unwrap()).unwrap();
        assert_eq!(right.render(&p), "b(I,b(I,I))");
        assert_eq!(
            tree_from_word(&parse_word("a1 a3", &p).unwrap()),
            Err(FskError::WordIndex { position: 2, index: 3 })
        );
    }

    #[test]
    fn exposed_carets_report_left_leaf() {
        let p = pal();
        let t = Tree::parse("a(I,b(I,I))", &p).unwrap();
        assert_eq!(t.exposed_carets(), vec![(2, 2)]);
        assert_eq!(t.collapse(2), Tree::parse("a(I,I)", &p).unwrap());
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..8).map(|n| shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(all_trees(2, 2).len(), 8);
    }
}
