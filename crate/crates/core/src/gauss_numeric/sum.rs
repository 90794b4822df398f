use num_complex::Complex64;

/// Complex accumulator carrying a double-double (about 106-bit) value in
/// each coordinate, via error-free TwoSum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexSum {
    re_hi: f64,
    re_lo: f64,
    im_hi: f64,
    im_lo: f64,
}

#[inline]
fn two_sum(hi: &mut f64, lo: &mut f64, x: f64) {
    let s = *hi + x;
    let bp = s - *hi;
    *lo += (*hi - (s - bp)) + (x - bp);
    *hi = s;
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        two_sum(&mut self.re_hi, &mut self.re_lo, z.re);
        two_sum(&mut self.im_hi, &mut self.im_lo, z.im);
    }

    pub fn real(&self) -> f64 {
        self.re_hi + self.re_lo
    }

    pub fn imag(&self) -> f64 {
        self.im_hi + self.im_lo
    }

    /// High and low words of the real part.
    pub fn real_parts(&self) -> (f64, f64) {
        (self.re_hi, self.re_lo)
    }

    pub fn imag_parts(&self) -> (f64, f64) {
        (self.im_hi, self.im_lo)
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.real(), self.imag())
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = ComplexSum::new();
        iter.into_iter().for_each(|z| s.add(z));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_bits() {
        let mut s = ComplexSum::new();
        s.add(Complex64::new(1e16, -1e16));
        for _ in 0..1000 {
            s.add(Complex64::new(1.0, 0.25));
        }
        s.add(Complex64::new(-1e16, 1e16));
        assert_eq!(s.real(), 1000.0);
        assert_eq!(s.imag(), 250.0);
    }
}
