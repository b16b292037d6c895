use num_complex::Complex64;

/// Gaussian integer `re + i·im` with overflow-checked arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: i128,
    pub im: i128,
}

impl Gaussian {
    pub const ZERO: Gaussian = Gaussian { re: 0, im: 0 };
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };

    pub const fn new(re: i128, im: i128) -> Self {
        Gaussian { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_even(self) -> bool {
        self.re % 2 == 0 && self.im % 2 == 0
    }

    pub fn half(self) -> Self {
        Gaussian { re: self.re / 2, im: self.im / 2 }
    }

    pub fn checked_neg(self) -> Option<Self> {
        Some(Gaussian { re: self.re.checked_neg()?, im: self.im.checked_neg()? })
    }

    /// Multiplication by `i`.
    pub fn mul_i(self) -> Option<Self> {
        Some(Gaussian { re: self.im.checked_neg()?, im: self.re })
    }

    /// Multiplication by `-i`.
    pub fn mul_neg_i(self) -> Option<Self> {
        Some(Gaussian { re: self.im, im: self.re.checked_neg()? })
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        Some(Gaussian { re: self.re.checked_add(o.re)?, im: self.im.checked_add(o.im)? })
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(Gaussian { re: self.re.checked_sub(o.re)?, im: self.im.checked_sub(o.im)? })
    }

    pub fn checked_mul(self, o: Self) -> Option<Self> {
        let re = self.re.checked_mul(o.re)?.checked_sub(self.im.checked_mul(o.im)?)?;
        let im = self.re.checked_mul(o.im)?.checked_add(self.im.checked_mul(o.re)?)?;
        Some(Gaussian { re, im })
    }

    pub fn conj(self) -> Self {
        Gaussian { re: self.re, im: -self.im }
    }

    /// `|z|^2`.
    pub fn norm_sqr(self) -> Option<i128> {
        self.re.checked_mul(self.re)?.checked_add(self.im.checked_mul(self.im)?)
    }

    /// Value of `self · 2^(-exp/2)` as a float.
    pub fn scaled(self, exp: u32) -> Complex64 {
        let s = scale(exp);
        Complex64::new(self.re as f64 * s, self.im as f64 * s)
    }
}

/// `2^(-exp/2)`.
pub(crate) fn scale(exp: u32) -> f64 {
    let half = (exp / 2) as i32;
    let base = 2f64.powi(-half);
    if exp % 2 == 1 {
        base * std::f64::consts::FRAC_1_SQRT_2
    } else {
        base
    }
}
