use crate::error::{MomentError, Result};

/// Largest supported side length. With 8-bit pixels every order-4
/// intermediate stays below 2^127 up to this size.
pub const MAX_DIMENSION: usize = 8192;

/// Immutable 8-bit grayscale image.
///
/// `i` is the horizontal (column) index in `0..width` and `j` the vertical
/// (row) index in `0..height`; `I(i, j)` lives at `pixels[j * width + i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || width > MAX_DIMENSION || height > MAX_DIMENSION {
            return Err(MomentError::InvalidDimensions { width, height, max: MAX_DIMENSION });
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(MomentError::LengthMismatch { expected, actual: pixels.len() });
        }
        assert!(order4_bound_holds(width, height), "order-4 accumulator bound violated");
        Ok(Image { width, height, pixels })
    }

    /// Builds an image by evaluating `f(i, j)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for j in 0..height {
            for i in 0..width {
                pixels.push(f(i, j));
            }
        }
        Image::new(width, height, pixels)
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Image::new(width, height, vec![0; width.saturating_mul(height)])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.pixels[j * self.width + i]
    }

    /// Row `j`, i.e. all pixels with vertical index `j`.
    #[inline]
    pub fn row(&self, j: usize) -> &[u8] {
        &self.pixels[j * self.width..(j + 1) * self.width]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.pixels.chunks_exact(self.width)
    }

    pub fn total_mass(&self) -> u64 {
        self.pixels.iter().map(|&v| v as u64).sum()
    }

    /// Swaps the roles of `i` and `j`.
    pub fn transposed(&self) -> Image {
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for i in 0..self.width {
            for j in 0..self.height {
                pixels.push(self.get(i, j));
            }
        }
        Image { width: self.height, height: self.width, pixels }
    }
}

/// Builds an image from a row-major byte buffer.
pub fn image_from_pixels(width: usize, height: usize, data: &[u8]) -> Result<Image> {
    Image::new(width, height, data.to_vec())
}

/// `255 * M * N * (M + 2N)^4 < 2^127`, the worst case for the slope-2 moment.
fn order4_bound_holds(width: usize, height: usize) -> bool {
    let reach = (width + 2 * height) as u128;
    (255 * width as u128 * height as u128).checked_mul(reach.pow(4)).is_some_and(|v| v < 1u128 << 127)
}

/// Checks that `mass * reach^order` fits a signed 128-bit integer, where
/// `reach` bounds every `|k|`, `|i|` or `|j|` that gets raised to `order`.
pub(crate) fn fits_i128(mass_bound: u128, reach: u128, order: u32) -> bool {
    reach.checked_pow(order).and_then(|p| p.checked_mul(mass_bound)).is_some_and(|v| v < 1u128 << 127)
}
