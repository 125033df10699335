use super::BLANK;

/// A two-way infinite tape held as two stacks. The head reads the top of
/// `right`; `left` holds the cells to the left of the head, nearest on top.
///
/// Blank cells at the far ends are never stored, so every tape content has
/// exactly one representation. A fully blank tape carries no head position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tape {
    left: Vec<char>,
    right: Vec<char>,
}

impl Tape {
    pub fn new() -> Tape {
        Tape::default()
    }

    /// Tape holding `word` with the head on its first symbol.
    pub fn with_word(word: &str) -> Tape {
        let mut right: Vec<char> = if word.is_ascii() {
            let b = word.as_bytes();
            let mut v = Vec::with_capacity(b.len());
            let mut i = b.len();
            while i > 0 {
                i -= 1;
                v.push(b[i] as char);
            }
            v
        } else {
            word.chars().rev().collect()
        };
        let keep = right.iter().position(|&c| c != BLANK).unwrap_or(right.len());
        right.drain(..keep);
        Tape { left: Vec::new(), right }
    }

    #[inline(always)]
    pub fn read(&self) -> char {
        match self.right.last() {
            Some(&c) => c,
            None => BLANK,
        }
    }

    #[inline(always)]
    pub fn write(&mut self, sym: char) {
        match self.right.len() {
            0 => {
                if sym != BLANK {
                    self.right.push(sym);
                }
            }
            1 if sym == BLANK => {
                self.right.pop();
            }
            n => self.right[n - 1] = sym,
        }
    }

    #[inline(always)]
    pub fn move_right(&mut self) {
        let c = match self.right.pop() {
            Some(c) => c,
            None => BLANK,
        };
        if c != BLANK || !self.left.is_empty() {
            self.left.push(c);
        }
    }

    #[inline(always)]
    pub fn move_left(&mut self) {
        let c = match self.left.pop() {
            Some(c) => c,
            None => BLANK,
        };
        if c != BLANK || !self.right.is_empty() {
            self.right.push(c);
        }
    }

    /// Insert a cell holding `sym` under the head; the old cells shift right.
    #[inline(always)]
    pub fn insert(&mut self, sym: char) {
        if !(sym == BLANK && self.right.is_empty()) {
            self.right.push(sym);
        }
    }

    /// Remove the cell under the head; the cells to its right shift left.
    #[inline(always)]
    pub fn delete(&mut self) {
        self.right.pop();
    }

    pub fn is_blank(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// True when nothing non-blank lies left of the head.
    pub fn at_left_end(&self) -> bool {
        self.left.is_empty()
    }

    /// Full content, left to right, with trailing blanks removed.
    pub fn content(&self) -> String {
        let mut s: String = self.left.iter().collect();
        s.extend(self.right.iter().rev());
        let trimmed = s.trim_end_matches(BLANK).len();
        s.truncate(trimmed);
        s
    }

    /// Content with the head position marked by brackets, for traces.
    pub fn render(&self) -> String {
        let mut s: String = self.left.iter().collect();
        s.push('[');
        s.push(self.read());
        s.push(']');
        if self.right.len() > 1 {
            s.extend(self.right[..self.right.len() - 1].iter().rev());
        }
        s
    }
}
