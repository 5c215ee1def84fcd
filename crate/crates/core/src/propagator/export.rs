use std::io::{Read, Write};

use num_complex::Complex64;

use super::{FieldGrid, PropagatorError};

pub const MAGIC: &[u8; 4] = b"NLSG";

/// CSV with columns `i, j, x, y, re, im` for one component.
pub fn write_csv<W: Write>(g: &FieldGrid, component: usize, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "j", "x", "y", "re", "im"])?;
    for j in 0..g.ny {
        for i in 0..g.nx {
            let z = g.value(component, i, j);
            w.serialize((i, j, g.x(i), g.y(j), z.re, z.im))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Little-endian `NLSG` header (`u32 nx, u32 ny, f64 lx, f64 ly, f64 t`)
/// followed by interleaved `(re, im)` pairs, row-major in `j`.
pub fn write_binary<W: Write>(g: &FieldGrid, component: usize, mut out: W) -> std::io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&(g.nx as u32).to_le_bytes())?;
    out.write_all(&(g.ny as u32).to_le_bytes())?;
    for v in [g.lx, g.ly, g.t] {
        out.write_all(&v.to_le_bytes())?;
    }
    for z in &g.values[component] {
        out.write_all(&z.re.to_le_bytes())?;
        out.write_all(&z.im.to_le_bytes())?;
    }
    out.flush()
}

/// Reads a single-component grid written by [`write_binary`].
pub fn read_binary<R: Read>(mut input: R) -> Result<FieldGrid, PropagatorError> {
    let io = |e: std::io::Error| PropagatorError::InvalidGrid(format!("read failed: {e}"));
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic).map_err(io)?;
    if &magic != MAGIC {
        return Err(PropagatorError::InvalidGrid("missing NLSG magic".into()));
    }
    let mut u = [0u8; 4];
    let mut f = [0u8; 8];
    let mut read_u32 = |r: &mut R| -> Result<usize, PropagatorError> {
        r.read_exact(&mut u).map_err(io)?;
        Ok(u32::from_le_bytes(u) as usize)
    };
    let (nx, ny) = (read_u32(&mut input)?, read_u32(&mut input)?);
    let mut read_f64 = |r: &mut R| -> Result<f64, PropagatorError> {
        r.read_exact(&mut f).map_err(io)?;
        Ok(f64::from_le_bytes(f))
    };
    let (lx, ly, t) = (read_f64(&mut input)?, read_f64(&mut input)?, read_f64(&mut input)?);
    let mut values = Vec::with_capacity(nx * ny);
    for _ in 0..nx * ny {
        values.push(Complex64::new(read_f64(&mut input)?, read_f64(&mut input)?));
    }
    FieldGrid::new(nx, ny, lx, ly, t, vec![values])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_round_trip_and_layout() {
        let g = FieldGrid::from_fn(4, 2, 3.0, 1.5, 0.25, 1, |_, x, y| Complex64::new(x, -y)).unwrap();
        let mut buf = Vec::new();
        write_binary(&g, 0, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 8 + 24 + 16 * 8);
        assert_eq!(&buf[..4], b"NLSG");
        assert_eq!(u32::from_le_bytes(buf[4..8].try_into().unwrap()), 4);
        assert_eq!(read_binary(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn csv_rows() {
        let g = FieldGrid::from_fn(2, 2, 2.0, 2.0, 0.0, 1, |_, x, y| Complex64::new(x, y)).unwrap();
        let mut buf = Vec::new();
        write_csv(&g, 0, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "i,j,x,y,re,im");
        assert_eq!(lines[2], "1,0,1.0,0.0,1.0,0.0");
        assert_eq!(lines.len(), 5);
    }
}
