use std::collections::HashMap;

/// One line of a straight-line program; lines only reference earlier lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Id,
    Gen(usize),
    Mul(usize, usize),
    Inv(usize),
}

/// Anything generator values can be multiplied in: permutations, matrices.
/// `gen(i, true)` must return the inverse of generator `i`.
pub trait Monoid {
    type T: Clone;
    fn one(&self) -> Self::T;
    fn gen(&self, i: usize, inverse: bool) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
}

#[derive(Clone, Debug, Default)]
pub struct Slp {
    lines: Vec<Line>,
}

/// Memo table for [`Slp::eval`], keyed by (line, inverted).
pub type SlpMemo<T> = HashMap<(usize, bool), T>;

impl Slp {
    pub fn new() -> Self {
        Slp::default()
    }
    pub fn len(&self) -> usize {
        self.lines.len()
    }
    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
    pub fn line(&self, i: usize) -> Line {
        self.lines[i]
    }
    pub fn push(&mut self, l: Line) -> usize {
        self.lines.push(l);
        self.lines.len() - 1
    }

    /// Value of `line` (or its inverse). Inverses are pushed down to the
    /// generators, so only generator inverses are ever needed.
    pub fn eval<M: Monoid>(&self, m: &M, line: usize, inverse: bool, memo: &mut SlpMemo<M::T>) -> M::T {
        let root = (line, inverse);
        let mut stack = vec![root];
        while let Some(&(l, inv)) = stack.last() {
            if memo.contains_key(&(l, inv)) {
                stack.pop();
                continue;
            }
            match self.lines[l] {
                Line::Id => {
                    memo.insert((l, inv), m.one());
                    stack.pop();
                }
                Line::Gen(i) => {
                    memo.insert((l, inv), m.gen(i, inv));
                    stack.pop();
                }
                Line::Inv(a) => match memo.get(&(a, !inv)) {
                    Some(v) => {
                        let v = v.clone();
                        memo.insert((l, inv), v);
                        stack.pop();
                    }
                    None => stack.push((a, !inv)),
                },
                Line::Mul(a, b) => {
                    let (x, y) = if inv { ((b, true), (a, true)) } else { ((a, false), (b, false)) };
                    match (memo.get(&x), memo.get(&y)) {
                        (Some(vx), Some(vy)) => {
                            let v = m.mul(vx, vy);
                            memo.insert((l, inv), v);
                            stack.pop();
                        }
                        (mx, my) => {
                            let (need_x, need_y) = (mx.is_none(), my.is_none());
                            if need_x {
                                stack.push(x);
                            }
                            if need_y {
                                stack.push(y);
                            }
                        }
                    }
                }
            }
        }
        memo[&root].clone()
    }
}
