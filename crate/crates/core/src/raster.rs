//! Reading and writing square rasters: binary PPM (P6) and, with the `png`
//! feature, 8-bit PNG.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::CatMapError;
use crate::orbit::RasterImage;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed PPM: {0}")]
    MalformedPpm(String),
    #[error("unsupported raster: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Image(#[from] CatMapError),
    #[cfg(feature = "png")]
    #[error("png decode: {0}")]
    PngDecode(#[from] png::DecodingError),
    #[cfg(feature = "png")]
    #[error("png encode: {0}")]
    PngEncode(#[from] png::EncodingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RasterFormat {
    Ppm,
    #[cfg(feature = "png")]
    Png,
}

impl RasterFormat {
    pub fn from_path(path: &Path) -> Result<Self, RasterError> {
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("ppm") | Some("pnm") => Ok(RasterFormat::Ppm),
            #[cfg(feature = "png")]
            Some("png") => Ok(RasterFormat::Png),
            other => Err(RasterError::Unsupported(format!("file extension {other:?}"))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            RasterFormat::Ppm => "ppm",
            #[cfg(feature = "png")]
            RasterFormat::Png => "png",
        }
    }
}

/// Pixel with up to four 8-bit channels; unused channels stay zero.
pub type Pixel = [u8; 4];

/// A square image plus what is needed to write it back unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    pub channels: usize,
    /// PPM maxval; 255 for PNG.
    pub maxval: u16,
    pub image: RasterImage<Pixel>,
}

impl Bitmap {
    pub fn with_image(&self, image: RasterImage<Pixel>) -> Bitmap {
        Bitmap { channels: self.channels, maxval: self.maxval, image }
    }
}

fn ppm_token<R: Read>(bytes: &mut io::Bytes<R>) -> Result<String, RasterError> {
    let mut token = String::new();
    loop {
        let b = match bytes.next() {
            Some(b) => b?,
            None if token.is_empty() => return Err(RasterError::MalformedPpm("truncated header".into())),
            None => return Ok(token),
        };
        match b {
            b'#' if token.is_empty() => {
                // comment runs to end of line
                for c in bytes.by_ref() {
                    if c? == b'\n' {
                        break;
                    }
                }
            }
            b if b.is_ascii_whitespace() => {
                if !token.is_empty() {
                    return Ok(token);
                }
            }
            b => token.push(b as char),
        }
    }
}

fn parse_dim(token: &str, what: &str) -> Result<usize, RasterError> {
    token.parse().map_err(|_| RasterError::MalformedPpm(format!("bad {what} {token:?}")))
}

pub fn read_ppm<R: Read>(reader: R) -> Result<Bitmap, RasterError> {
    let mut bytes = io::BufReader::new(reader).bytes();
    let magic = ppm_token(&mut bytes)?;
    if magic != "P6" {
        return Err(RasterError::MalformedPpm(format!("expected P6 magic, found {magic:?}")));
    }
    let width = parse_dim(&ppm_token(&mut bytes)?, "width")?;
    let height = parse_dim(&ppm_token(&mut bytes)?, "height")?;
    let maxval = parse_dim(&ppm_token(&mut bytes)?, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(RasterError::Unsupported(format!("PPM maxval {maxval}; only 8-bit samples are handled")));
    }
    let need = width * height * 3;
    let mut data = Vec::with_capacity(need);
    for b in bytes.take(need) {
        data.push(b?);
    }
    if data.len() != need {
        return Err(RasterError::MalformedPpm(format!("expected {need} bytes of pixel data, found {}", data.len())));
    }
    let pixels = data.chunks_exact(3).map(|c| [c[0], c[1], c[2], 0]).collect();
    Ok(Bitmap { channels: 3, maxval: maxval as u16, image: RasterImage::new(width, height, pixels)? })
}

pub fn write_ppm<W: Write>(mut writer: W, bitmap: &Bitmap) -> Result<(), RasterError> {
    let side = bitmap.image.side();
    write!(writer, "P6\n{side} {side}\n{}\n", bitmap.maxval)?;
    let mut data = Vec::with_capacity(side * side * 3);
    for p in bitmap.image.pixels() {
        match bitmap.channels {
            1 | 2 => data.extend_from_slice(&[p[0], p[0], p[0]]),
            _ => data.extend_from_slice(&p[..3]),
        }
    }
    writer.write_all(&data)?;
    Ok(())
}

#[cfg(feature = "png")]
pub fn read_png<R: Read>(reader: R) -> Result<Bitmap, RasterError> {
    let mut decoder = png::Decoder::new(reader);
    decoder.set_transformations(png::Transformations::normalize_to_color8());
    let mut reader = decoder.read_info()?;
    let mut buf = vec![0; reader.output_buffer_size()];
    let info = reader.next_frame(&mut buf)?;
    let channels = info.color_type.samples();
    let data = &buf[..info.buffer_size()];
    let pixels = data
        .chunks_exact(channels)
        .map(|c| {
            let mut p = [0u8; 4];
            p[..channels].copy_from_slice(c);
            p
        })
        .collect();
    let image = RasterImage::new(info.width as usize, info.height as usize, pixels)?;
    Ok(Bitmap { channels, maxval: 255, image })
}

#[cfg(feature = "png")]
pub fn write_png<W: Write>(writer: W, bitmap: &Bitmap) -> Result<(), RasterError> {
    let side = bitmap.image.side() as u32;
    let mut encoder = png::Encoder::new(writer, side, side);
    encoder.set_color(match bitmap.channels {
        1 => png::ColorType::Grayscale,
        2 => png::ColorType::GrayscaleAlpha,
        3 => png::ColorType::Rgb,
        _ => png::ColorType::Rgba,
    });
    encoder.set_depth(png::BitDepth::Eight);
    let mut w = encoder.write_header()?;
    let data: Vec<u8> = bitmap.image.pixels().iter().flat_map(|p| p[..bitmap.channels].to_vec()).collect();
    w.write_image_data(&data)?;
    Ok(())
}

pub fn read_raster(path: &Path) -> Result<Bitmap, RasterError> {
    let file = io::BufReader::new(fs::File::open(path)?);
    match RasterFormat::from_path(path)? {
        RasterFormat::Ppm => read_ppm(file),
        #[cfg(feature = "png")]
        RasterFormat::Png => read_png(file),
    }
}

pub fn write_raster(path: &Path, bitmap: &Bitmap) -> Result<(), RasterError> {
    let format = RasterFormat::from_path(path)?;
    let mut file = io::BufWriter::new(fs::File::create(path)?);
    match format {
        RasterFormat::Ppm => write_ppm(&mut file, bitmap)?,
        #[cfg(feature = "png")]
        RasterFormat::Png => write_png(&mut file, bitmap)?,
    }
    file.flush()?;
    Ok(())
}

/// `<dir>/<stem>_t<k>.<ext>`.
pub fn frame_path(dir: &Path, stem: &str, k: u64, ext: &str) -> PathBuf {
    dir.join(format!("{stem}_t{k}.{ext}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Bitmap {
        let pixels = (0..9u8).map(|i| [i, 2 * i, 3 * i, 0]).collect();
        Bitmap { channels: 3, maxval: 255, image: RasterImage::new(3, 3, pixels).unwrap() }
    }

    #[test]
    fn ppm_round_trip_is_byte_exact() {
        let mut out = Vec::new();
        write_ppm(&mut out, &sample()).unwrap();
        assert!(out.starts_with(b"P6\n3 3\n255\n"));
        assert_eq!(out.len(), 11 + 27);
        let back = read_ppm(&out[..]).unwrap();
        assert_eq!(back, sample());
        let mut again = Vec::new();
        write_ppm(&mut again, &back).unwrap();
        assert_eq!(again, out);
    }

    #[test]
    fn ppm_header_comments() {
        let mut bytes = b"P6\n# made by hand\n2 2 # trailing\n255\n".to_vec();
        bytes.extend(0..12u8);
        let b = read_ppm(&bytes[..]).unwrap();
        assert_eq!(b.image.pixels()[3], [9, 10, 11, 0]);
    }

    #[test]
    fn ppm_errors() {
        assert!(matches!(read_ppm(&b"P3\n1 1\n255\n"[..]), Err(RasterError::MalformedPpm(_))));
        assert!(matches!(read_ppm(&b"P6\n2 2\n255\n\x01"[..]), Err(RasterError::MalformedPpm(_))));
        assert!(matches!(read_ppm(&b"P6\n1 1\n65535\n\0\0\0\0\0\0"[..]), Err(RasterError::Unsupported(_))));
        let mut rect = b"P6\n2 1\n255\n".to_vec();
        rect.extend([0u8; 6]);
        assert!(matches!(
            read_ppm(&rect[..]),
            Err(RasterError::Image(CatMapError::NonSquareImage { width: 2, height: 1 }))
        ));
    }

    #[cfg(feature = "png")]
    #[test]
    fn png_round_trip() {
        let mut out = Vec::new();
        write_png(&mut out, &sample()).unwrap();
        assert_eq!(read_png(&out[..]).unwrap(), sample());
    }

    #[test]
    fn frame_names() {
        assert_eq!(frame_path(Path::new("out"), "cat", 3, "ppm"), PathBuf::from("out/cat_t3.ppm"));
    }
}
