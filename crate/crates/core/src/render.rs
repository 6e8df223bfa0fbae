//! Box-drawing text rendering of circuit expressions.
//!
//! Channels run left to right. Concatenation stacks blocks vertically and
//! series chains them horizontally. Permutations and feedback loops are drawn
//! as labelled frames.

use crate::circuit::CircuitExpression as E;

#[derive(Clone, Debug)]
struct Block {
    grid: Vec<Vec<char>>,
    /// Row of each channel wire (inputs and outputs share rows).
    ports: Vec<usize>,
}

impl Block {
    fn width(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    fn height(&self) -> usize {
        self.grid.len()
    }

    fn boxed(label: &str, cdim: usize) -> Self {
        let inner = label.chars().count() + 2;
        let height = 2 * cdim + 1;
        let mut grid = vec![vec![' '; inner + 4]; height];
        grid[0][1] = '┌';
        grid[0][inner + 2] = '┐';
        grid[height - 1][1] = '└';
        grid[height - 1][inner + 2] = '┘';
        for x in 2..inner + 2 {
            grid[0][x] = '─';
            grid[height - 1][x] = '─';
        }
        for row in grid.iter_mut().take(height - 1).skip(1) {
            row[1] = '│';
            row[inner + 2] = '│';
        }
        let ports: Vec<usize> = (0..cdim).map(|k| 2 * k + 1).collect();
        for &p in &ports {
            grid[p][0] = '─';
            grid[p][1] = '┤';
            grid[p][inner + 2] = '├';
            grid[p][inner + 3] = '─';
        }
        for (k, ch) in label.chars().enumerate() {
            grid[1][3 + k] = ch;
        }
        Self { grid, ports }
    }

    fn wires(n: usize) -> Self {
        let height = 2 * n + 1;
        let mut grid = vec![vec![' '; 1]; height];
        let ports: Vec<usize> = (0..n).map(|k| 2 * k + 1).collect();
        for &p in &ports {
            grid[p][0] = '─';
        }
        Self { grid, ports }
    }

    /// Inserts a row above `at`, continuing vertical strokes from the row above.
    fn stretch(&mut self, at: usize) {
        let row: Vec<char> = match at.checked_sub(1).and_then(|r| self.grid.get(r)) {
            Some(above) => above
                .iter()
                .map(|&c| if matches!(c, '│' | '┌' | '┐' | '├' | '┤' | '┬' | '┼') { '│' } else { ' ' })
                .collect(),
            None => vec![' '; self.width()],
        };
        self.grid.insert(at, row);
        for p in &mut self.ports {
            if *p >= at {
                *p += 1;
            }
        }
    }

    fn pad_height(&mut self, h: usize) {
        while self.height() < h {
            let at = self.height();
            self.stretch(at);
        }
    }

    fn pad_width(&mut self, w: usize) {
        let width = self.width();
        for (r, row) in self.grid.iter_mut().enumerate() {
            let fill = if self.ports.contains(&r) { '─' } else { ' ' };
            row.extend(std::iter::repeat(fill).take(w.saturating_sub(width)));
        }
    }
}

fn stack(blocks: Vec<Block>) -> Block {
    let width = blocks.iter().map(Block::width).max().unwrap_or(0);
    let mut grid = Vec::new();
    let mut ports = Vec::new();
    for mut b in blocks {
        b.pad_width(width);
        let off = grid.len();
        ports.extend(b.ports.iter().map(|p| p + off));
        grid.extend(b.grid);
    }
    Block { grid, ports }
}

fn join(mut left: Block, mut right: Block) -> Block {
    for k in 0..left.ports.len() {
        let (l, r) = (left.ports[k], right.ports[k]);
        if l < r {
            for _ in l..r {
                left.stretch(left.ports[k]);
            }
        } else {
            for _ in r..l {
                right.stretch(right.ports[k]);
            }
        }
    }
    let h = left.height().max(right.height());
    left.pad_height(h);
    right.pad_height(h);
    let grid = left.grid.into_iter().zip(right.grid).map(|(mut a, b)| {
        a.extend(b);
        a
    });
    Block { grid: grid.collect(), ports: left.ports }
}

fn frame(inner: Block, label: &str, cdim: usize) -> Block {
    let w = inner.width().max(label.chars().count() + 2) + 2;
    let h = inner.height().max(2 * cdim - 1) + 2;
    let mut grid = vec![vec![' '; w + 4]; h];
    for x in 2..w + 2 {
        grid[0][x] = '─';
        grid[h - 1][x] = '─';
    }
    grid[0][1] = '┌';
    grid[0][w + 2] = '┐';
    grid[h - 1][1] = '└';
    grid[h - 1][w + 2] = '┘';
    for row in grid.iter_mut().take(h - 1).skip(1) {
        row[1] = '│';
        row[w + 2] = '│';
    }
    for (k, ch) in label.chars().enumerate() {
        grid[0][3 + k] = ch;
    }
    for (r, row) in inner.grid.iter().enumerate() {
        for (c, &ch) in row.iter().enumerate() {
            grid[r + 1][c + 3] = ch;
        }
    }
    let ports: Vec<usize> = (0..cdim).map(|k| 2 * k + 1).collect();
    for &p in &ports {
        grid[p][0] = '─';
        grid[p][1] = '┤';
        grid[p][w + 2] = '├';
        grid[p][w + 3] = '─';
    }
    Block { grid, ports }
}

fn render(e: &E) -> Block {
    match e {
        E::Component(c) => Block::boxed(&c.label, c.cdim),
        E::Id { n } => Block::wires(*n),
        E::Perm { image } => {
            let parts: Vec<String> = image.iter().map(usize::to_string).collect();
            Block::boxed(&format!("P({})", parts.join(" ")), image.len())
        }
        E::Concat { operands } => stack(operands.iter().map(render).collect()),
        E::Series { upstream, downstream } => join(render(upstream), render(downstream)),
        E::Feedback { inner, out, input } => frame(render(inner), &format!("{out}→{input}"), e.cdim()),
    }
}

/// Deterministic multi-line rendering; trailing blanks and empty border rows are trimmed.
pub fn render_text(e: &E) -> String {
    let block = render(e);
    let mut lines: Vec<String> =
        block.grid.iter().map(|row| row.iter().collect::<String>().trim_end().to_string()).collect();
    while lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    let lead = lines.iter().take_while(|l| l.is_empty()).count();
    lines.drain(..lead);
    lines.join("\n")
}
