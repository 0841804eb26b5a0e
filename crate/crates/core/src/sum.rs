//! Compensated summation and a deterministic chunked parallel reduction.

use num_complex::Complex64;
use rayon::prelude::*;

/// Fixed chunk width for parallel reductions over a summation index.
pub const CHUNK: u64 = 1024;

/// Kahan–Babuška (Neumaier) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplex {
    re: Kahan,
    im: Kahan,
}

impl KahanComplex {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sums vector-valued terms `f(i)` for `i` in `lo..=hi`, each of length `len`.
///
/// The index range is cut into chunks of [`CHUNK`] consecutive indices,
/// each chunk is summed in ascending order with compensation, and chunk
/// totals are combined pairwise in a fixed tree. The result does not depend
/// on the number of worker threads.
pub fn chunked_sum<F>(lo: u64, hi: u64, len: usize, f: F) -> Vec<Complex64>
where
    F: Fn(u64, &mut [Complex64]) + Sync,
{
    if hi < lo {
        return vec![Complex64::new(0.0, 0.0); len];
    }
    let n_chunks = (hi - lo) / CHUNK + 1;
    let partials: Vec<Vec<Complex64>> = (0..n_chunks)
        .into_par_iter()
        .map(|ch| {
            let start = lo + ch * CHUNK;
            let end = (start + CHUNK - 1).min(hi);
            let mut acc = vec![KahanComplex::default(); len];
            let mut term = vec![Complex64::new(0.0, 0.0); len];
            for i in start..=end {
                term.iter_mut().for_each(|t| *t = Complex64::new(0.0, 0.0));
                f(i, &mut term);
                for (a, t) in acc.iter_mut().zip(&term) {
                    a.add(*t);
                }
            }
            acc.iter().map(KahanComplex::value).collect()
        })
        .collect();
    tree_combine(partials, len)
}

fn tree_combine(mut level: Vec<Vec<Complex64>>, len: usize) -> Vec<Complex64> {
    if level.is_empty() {
        return vec![Complex64::new(0.0, 0.0); len];
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(left) = it.next() {
            match it.next() {
                Some(right) => next.push(left.iter().zip(&right).map(|(a, b)| a + b).collect()),
                None => next.push(left),
            }
        }
        level = next;
    }
    level.pop().unwrap()
}

/// Deterministic parallel map preserving input order.
pub fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}
