//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the crate's sorting or filtering code.

#![allow(dead_code)]

use irdenoise::GrayImage;

/// Plain O(n^2) insertion sort.
pub fn reference_sort<T: Ord + Copy>(values: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(values.len());
    for &v in values {
        let pos = out.iter().position(|&o| v < o).unwrap_or(out.len());
        out.insert(pos, v);
    }
    out
}

pub fn reference_median(values: &[u8]) -> u8 {
    let s = reference_sort(values);
    s[(s.len() - 1) / 2]
}

/// Direct neighborhood enumeration with clamped coordinates.
pub fn brute_window(
    pixels: &[u8],
    width: usize,
    height: usize,
    x: usize,
    y: usize,
    k: usize,
) -> Vec<u8> {
    let r = (k / 2) as i64;
    let mut out = Vec::with_capacity(k * k);
    for dy in -r..=r {
        for dx in -r..=r {
            let sx = (x as i64 + dx).max(0).min(width as i64 - 1) as usize;
            let sy = (y as i64 + dy).max(0).min(height as i64 - 1) as usize;
            out.push(pixels[sy * width + sx]);
        }
    }
    out
}

pub fn brute_mf(img: &GrayImage, k: usize) -> Vec<u8> {
    let (w, h, p) = (img.width(), img.height(), img.pixels());
    let mut out = Vec::with_capacity(p.len());
    for y in 0..h {
        for x in 0..w {
            out.push(reference_median(&brute_window(p, w, h, x, y, k)));
        }
    }
    out
}

pub fn brute_fnr(img: &GrayImage, k: usize) -> Vec<u8> {
    let (w, h, p) = (img.width(), img.height(), img.pixels());
    let mut out = Vec::with_capacity(p.len());
    for y in 0..h {
        for x in 0..w {
            let win = brute_window(p, w, h, x, y, k);
            let center = p[y * w + x];
            let lo = *win.iter().min().unwrap();
            let hi = *win.iter().max().unwrap();
            out.push(if center == lo || center == hi {
                reference_median(&win)
            } else {
                center
            });
        }
    }
    out
}

/// Minimal xorshift generator for test inputs, separate from the crate's PRNG.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_mul(0x2545_F491_4F6C_DD1D) | 1)
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    pub fn image(&mut self, max_side: usize) -> GrayImage {
        let w = 1 + self.below(max_side as u64) as usize;
        let h = 1 + self.below(max_side as u64) as usize;
        let px = (0..w * h).map(|_| self.next() as u8).collect();
        GrayImage::from_pixels(w, h, px).unwrap()
    }
}

pub mod adversary {
    //! McIlroy's "killer adversary": values are decided lazily during the
    //! sort so that the pivot candidates always look like extremes. Running
    //! the sort once over [`Gas`] items yields a concrete permutation that
    //! drives the same sort into its worst case.

    use std::cell::RefCell;
    use std::cmp::Ordering;

    struct State {
        values: Vec<usize>,
        gas: usize,
        nsolid: usize,
        candidate: usize,
    }

    thread_local! {
        static STATE: RefCell<Option<State>> = const { RefCell::new(None) };
    }

    #[derive(Clone, Copy, Debug)]
    pub struct Gas(pub usize);

    impl PartialEq for Gas {
        fn eq(&self, other: &Self) -> bool {
            self.cmp(other) == Ordering::Equal
        }
    }
    impl Eq for Gas {}
    impl PartialOrd for Gas {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Gas {
        fn cmp(&self, other: &Self) -> Ordering {
            STATE.with(|s| {
                let mut guard = s.borrow_mut();
                let st = guard.as_mut().expect("adversary not armed");
                let (x, y) = (self.0, other.0);
                let gas = st.gas;
                if st.values[x] == gas && st.values[y] == gas {
                    if x == st.candidate {
                        st.values[x] = st.nsolid;
                        st.nsolid += 1;
                    } else {
                        st.values[y] = st.nsolid;
                        st.nsolid += 1;
                    }
                }
                if st.values[x] == gas {
                    st.candidate = x;
                } else if st.values[y] == gas {
                    st.candidate = y;
                }
                st.values[x].cmp(&st.values[y])
            })
        }
    }

    /// Runs `sort` against the adversary and returns the frozen values as a
    /// permutation of `0..n`.
    pub fn killer_input(n: usize, sort: impl FnOnce(&mut [Gas])) -> Vec<usize> {
        STATE.with(|s| {
            *s.borrow_mut() = Some(State {
                values: vec![n; n],
                gas: n,
                nsolid: 0,
                candidate: 0,
            })
        });
        let mut items: Vec<Gas> = (0..n).map(Gas).collect();
        sort(&mut items);
        let mut st = STATE.with(|s| s.borrow_mut().take()).unwrap();
        // anything never compared against is still gas; make it solid
        for v in st.values.iter_mut() {
            if *v == st.gas {
                *v = st.nsolid;
                st.nsolid += 1;
            }
        }
        st.values
    }
}
