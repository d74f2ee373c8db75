//! Eight f64 lanes with separate subtract, multiply and add (never fused),
//! so every backend rounds identically and distances are bit-identical
//! whichever one the build selects.

#[cfg(all(target_arch = "x86_64", target_feature = "avx512f"))]
mod imp {
    use std::arch::x86_64::*;

    #[derive(Clone, Copy)]
    pub struct F64x8(__m512d);

    impl F64x8 {
        #[inline(always)]
        pub fn zero() -> Self {
            // SAFETY: avx512f is enabled for this build.
            F64x8(unsafe { _mm512_setzero_pd() })
        }

        #[inline(always)]
        pub fn load(s: &[f64; 8]) -> Self {
            // SAFETY: `s` is 8 readable doubles.
            unsafe { Self::load_ptr(s.as_ptr()) }
        }

        /// # Safety
        /// `p` must point to 8 readable doubles.
        #[inline(always)]
        pub unsafe fn load_ptr(p: *const f64) -> Self {
            F64x8(_mm512_loadu_pd(p))
        }

        #[inline(always)]
        pub fn add_sq_diff(self, x: Self, y: Self) -> Self {
            // SAFETY: avx512f is enabled for this build.
            unsafe {
                let d = _mm512_sub_pd(x.0, y.0);
                F64x8(_mm512_add_pd(self.0, _mm512_mul_pd(d, d)))
            }
        }

        #[inline(always)]
        pub fn to_array(self) -> [f64; 8] {
            let mut out = [0.0; 8];
            // SAFETY: `out` has room for 8 doubles.
            unsafe { _mm512_storeu_pd(out.as_mut_ptr(), self.0) };
            out
        }
    }
}

#[cfg(all(target_arch = "x86_64", target_feature = "avx", not(target_feature = "avx512f")))]
mod imp {
    use std::arch::x86_64::*;

    #[derive(Clone, Copy)]
    pub struct F64x8(__m256d, __m256d);

    impl F64x8 {
        #[inline(always)]
        pub fn zero() -> Self {
            // SAFETY: avx is enabled for this build.
            unsafe { F64x8(_mm256_setzero_pd(), _mm256_setzero_pd()) }
        }

        #[inline(always)]
        pub fn load(s: &[f64; 8]) -> Self {
            // SAFETY: `s` is 8 readable doubles.
            unsafe { Self::load_ptr(s.as_ptr()) }
        }

        /// # Safety
        /// `p` must point to 8 readable doubles.
        #[inline(always)]
        pub unsafe fn load_ptr(p: *const f64) -> Self {
            F64x8(_mm256_loadu_pd(p), _mm256_loadu_pd(p.add(4)))
        }

        #[inline(always)]
        pub fn add_sq_diff(self, x: Self, y: Self) -> Self {
            // SAFETY: avx is enabled for this build.
            unsafe {
                let lo = _mm256_sub_pd(x.0, y.0);
                let hi = _mm256_sub_pd(x.1, y.1);
                F64x8(
                    _mm256_add_pd(self.0, _mm256_mul_pd(lo, lo)),
                    _mm256_add_pd(self.1, _mm256_mul_pd(hi, hi)),
                )
            }
        }

        #[inline(always)]
        pub fn to_array(self) -> [f64; 8] {
            let mut out = [0.0; 8];
            // SAFETY: `out` has room for 8 doubles.
            unsafe {
                _mm256_storeu_pd(out.as_mut_ptr(), self.0);
                _mm256_storeu_pd(out.as_mut_ptr().add(4), self.1);
            }
            out
        }
    }
}

#[cfg(not(all(target_arch = "x86_64", target_feature = "avx")))]
mod imp {
    #[derive(Clone, Copy)]
    pub struct F64x8([f64; 8]);

    impl F64x8 {
        #[inline(always)]
        pub fn zero() -> Self {
            F64x8([0.0; 8])
        }

        #[inline(always)]
        pub fn load(s: &[f64; 8]) -> Self {
            F64x8(*s)
        }

        /// # Safety
        /// `p` must point to 8 readable doubles.
        #[inline(always)]
        pub unsafe fn load_ptr(p: *const f64) -> Self {
            F64x8(std::ptr::read_unaligned(p as *const [f64; 8]))
        }

        #[inline(always)]
        pub fn add_sq_diff(mut self, x: Self, y: Self) -> Self {
            for l in 0..8 {
                let d = x.0[l] - y.0[l];
                self.0[l] += d * d;
            }
            self
        }

        #[inline(always)]
        pub fn to_array(self) -> [f64; 8] {
            self.0
        }
    }
}

pub(crate) use imp::F64x8;
