//! Instrumented introsort and window medians.
//!
//! The sort is quicksort with a median-of-three pivot. Once the recursion
//! depth exceeds `2 * floor(log2 n)` the remaining partition is heap-sorted,
//! and partitions of at most [`INSERTION_CUTOFF`] elements are left for one
//! final insertion-sort pass over the whole slice.

use crate::error::{Error, Result};

/// Partitions at or below this length are not split further.
pub const INSERTION_CUTOFF: usize = 16;

/// Per-run sort accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SortCounters {
    /// Completed top-level sort calls, one per median request.
    pub sorts_performed: u64,
    /// Element comparisons across all sorts. Informational.
    pub comparisons: u64,
    /// Partitions handed to heapsort because the depth limit was reached.
    pub depth_limit_hits: u64,
}

impl SortCounters {
    pub fn merge(&mut self, other: &SortCounters) {
        self.sorts_performed += other.sorts_performed;
        self.comparisons += other.comparisons;
        self.depth_limit_hits += other.depth_limit_hits;
    }
}

/// Recursion budget for a slice of `n` elements: `2 * floor(log2 n)`.
pub fn depth_limit(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        2 * n.ilog2() as usize
    }
}

/// Sorts `values` into non-decreasing order and counts one sort.
pub fn sort_values<T: Ord + Copy>(values: &mut [T], counters: &mut SortCounters) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid("cannot sort an empty sequence"));
    }
    introsort(values, counters);
    Ok(())
}

/// Median of an odd-length sequence: the element at `(n - 1) / 2` after
/// sorting a copy. Counts exactly one sort.
pub fn median_of<T: Ord + Copy>(values: &[T], counters: &mut SortCounters) -> Result<T> {
    if values.is_empty() {
        return Err(Error::invalid("median of an empty sequence"));
    }
    if values.len().is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "median requires an odd number of values, got {}",
            values.len()
        )));
    }
    let mut buf = values.to_vec();
    Ok(median_in_place(&mut buf, counters))
}

/// Sorts a non-empty odd-length scratch buffer and returns its middle element.
pub(crate) fn median_in_place<T: Ord + Copy>(buf: &mut [T], counters: &mut SortCounters) -> T {
    debug_assert!(buf.len() % 2 == 1);
    introsort(buf, counters);
    buf[(buf.len() - 1) / 2]
}

fn introsort<T: Ord + Copy>(v: &mut [T], c: &mut SortCounters) {
    c.sorts_performed += 1;
    if v.len() > 1 {
        introsort_loop(v, depth_limit(v.len()), c);
        insertion_sort(v, c);
    }
}

#[inline]
fn less<T: Ord>(a: &T, b: &T, c: &mut SortCounters) -> bool {
    c.comparisons += 1;
    a < b
}

fn introsort_loop<T: Ord + Copy>(mut v: &mut [T], mut depth: usize, c: &mut SortCounters) {
    while v.len() > INSERTION_CUTOFF {
        if depth == 0 {
            c.depth_limit_hits += 1;
            heapsort(v, c);
            return;
        }
        depth -= 1;
        let pivot = median_of_three(v[0], v[v.len() / 2], v[v.len() - 1], c);
        let cut = partition(v, pivot, c);
        let (left, right) = v.split_at_mut(cut);
        introsort_loop(right, depth, c);
        v = left;
    }
}

fn median_of_three<T: Ord + Copy>(a: T, b: T, m: T, c: &mut SortCounters) -> T {
    if less(&a, &b, c) {
        if less(&b, &m, c) {
            b
        } else if less(&a, &m, c) {
            m
        } else {
            a
        }
    } else if less(&a, &m, c) {
        a
    } else if less(&b, &m, c) {
        m
    } else {
        b
    }
}

/// Hoare partition around a pivot value drawn from `v`. Returns a cut in
/// `1..v.len()` with every element left of it `<= pivot` and every element
/// right of it `>= pivot`.
fn partition<T: Ord + Copy>(v: &mut [T], pivot: T, c: &mut SortCounters) -> usize {
    let mut first = 0;
    let mut last = v.len();
    loop {
        while less(&v[first], &pivot, c) {
            first += 1;
        }
        last -= 1;
        while less(&pivot, &v[last], c) {
            last -= 1;
        }
        if first >= last {
            return first;
        }
        v.swap(first, last);
        first += 1;
    }
}

fn heapsort<T: Ord + Copy>(v: &mut [T], c: &mut SortCounters) {
    let n = v.len();
    for start in (0..n / 2).rev() {
        sift_down(v, start, n, c);
    }
    for end in (1..n).rev() {
        v.swap(0, end);
        sift_down(v, 0, end, c);
    }
}

fn sift_down<T: Ord + Copy>(v: &mut [T], mut root: usize, end: usize, c: &mut SortCounters) {
    loop {
        let mut child = 2 * root + 1;
        if child >= end {
            return;
        }
        if child + 1 < end && less(&v[child], &v[child + 1], c) {
            child += 1;
        }
        if !less(&v[root], &v[child], c) {
            return;
        }
        v.swap(root, child);
        root = child;
    }
}

fn insertion_sort<T: Ord + Copy>(v: &mut [T], c: &mut SortCounters) {
    for i in 1..v.len() {
        let x = v[i];
        let mut j = i;
        while j > 0 && less(&x, &v[j - 1], c) {
            v[j] = v[j - 1];
            j -= 1;
        }
        v[j] = x;
    }
}
