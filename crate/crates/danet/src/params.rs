use std::collections::BTreeMap;
use std::io::{Read as _, Write as _};
use std::path::Path;

use lfd_degrade::{mix64, NoiseStream};
use ndarray::{Array1, Array2, Array4, ArrayD, IxDyn};
use serde::{Deserialize, Serialize};

use crate::{DanetError, NetConfig, Result};

/// Version string stored in the container header.
pub const PARAMS_FORMAT_VERSION: &str = "lfdanet-ref/1";

/// Named parameter tensors, ordered by name.
///
/// Names follow a fixed dotted scheme (`kpe.fc1.weight`,
/// `group2.distg3.fuse.bias`, ...); [`shape_table`] is the authority on
/// which names exist for a given [`NetConfig`] and what shape each has.
#[derive(Debug, Clone, PartialEq)]
pub struct NetParams {
    map: BTreeMap<String, ArrayD<f64>>,
}

/// Every parameter name for `cfg` with its shape, in name order.
pub fn shape_table(cfg: &NetConfig) -> Vec<(String, Vec<usize>)> {
    let c = cfg.channels;
    let a = cfg.ang_res;
    let k = cfg.da_kernel;
    let c4 = c / 4;
    let mut t: Vec<(String, Vec<usize>)> = Vec::new();
    let mut push = |name: String, shape: Vec<usize>| {
        let bias_len = shape[0];
        t.push((format!("{name}.weight"), shape));
        t.push((format!("{name}.bias"), vec![bias_len]));
    };

    for i in 0..cfg.kpe_widths.len() - 1 {
        push(
            format!("kpe.fc{}", i + 1),
            vec![cfg.kpe_widths[i + 1], cfg.kpe_widths[i]],
        );
    }

    let repr = cfg.repr_len();
    for g in 1..=cfg.n_groups {
        push(format!("group{g}.dablock.kgen_fc1"), vec![cfg.kgen_hidden, repr]);
        push(
            format!("group{g}.dablock.kgen_fc2"),
            vec![c * k * k, cfg.kgen_hidden],
        );
        push(format!("group{g}.dablock.conv1x1"), vec![c, c, 1, 1]);
        push(format!("group{g}.dablock.ca_fc1"), vec![cfg.ca_hidden, repr]);
        push(format!("group{g}.dablock.ca_fc2"), vec![c, cfg.ca_hidden]);

        for b in 1..=cfg.blocks_per_group {
            let p = format!("group{g}.distg{b}");
            push(format!("{p}.spa1"), vec![c, c, 3, 3]);
            push(format!("{p}.spa2"), vec![c, c, 3, 3]);
            push(format!("{p}.ang_conv"), vec![c4, c, a, a]);
            push(format!("{p}.ang_up"), vec![a * a * c4, c4, 1, 1]);
            push(format!("{p}.epih_conv"), vec![c4, c, a, 1]);
            push(format!("{p}.epih_up"), vec![a * c4, c4, 1, 1]);
            push(format!("{p}.epiv_conv"), vec![c4, c, a, 1]);
            push(format!("{p}.epiv_up"), vec![a * c4, c4, 1, 1]);
            push(format!("{p}.fuse"), vec![c, c + 3 * c4, 1, 1]);
        }
    }

    push("head".to_string(), vec![c, 3, 3, 3]);
    push("tail.up1".to_string(), vec![4 * c, c, 3, 3]);
    push("tail.up2".to_string(), vec![4 * c, c, 3, 3]);
    push("tail.out".to_string(), vec![3, c, 3, 3]);

    t.sort_by(|x, y| x.0.cmp(&y.0));
    t
}

/// Fan-in of a parameter tensor: input features for a matrix, input
/// channels times kernel area for a convolution.
fn fan_in(shape: &[usize]) -> usize {
    shape[1..].iter().product()
}

impl NetParams {
    pub fn from_map(map: BTreeMap<String, ArrayD<f64>>) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &BTreeMap<String, ArrayD<f64>> {
        &self.map
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// All-zero parameters for `cfg`.
    pub fn zeros(cfg: &NetConfig) -> Result<Self> {
        cfg.validate()?;
        let map = shape_table(cfg)
            .into_iter()
            .map(|(name, shape)| (name, ArrayD::zeros(IxDyn(&shape))))
            .collect();
        Ok(Self { map })
    }

    pub fn get(&self, name: &str) -> Result<&ArrayD<f64>> {
        self.map.get(name).ok_or_else(|| DanetError::MissingParam {
            name: name.to_string(),
        })
    }

    pub fn insert(&mut self, name: &str, value: ArrayD<f64>) {
        self.map.insert(name.to_string(), value);
    }

    pub(crate) fn mat(&self, name: &str) -> Result<Array2<f64>> {
        let a = self.get(name)?;
        a.view()
            .into_dimensionality()
            .map(|v| v.to_owned())
            .map_err(|_| DanetError::BadShape {
                name: name.to_string(),
                expected: vec![0, 0],
                got: a.shape().to_vec(),
            })
    }

    pub(crate) fn vec1(&self, name: &str) -> Result<Array1<f64>> {
        let a = self.get(name)?;
        a.view()
            .into_dimensionality()
            .map(|v| v.to_owned())
            .map_err(|_| DanetError::BadShape {
                name: name.to_string(),
                expected: vec![0],
                got: a.shape().to_vec(),
            })
    }

    pub(crate) fn conv(&self, name: &str) -> Result<Array4<f64>> {
        let a = self.get(name)?;
        a.view()
            .into_dimensionality()
            .map(|v| v.to_owned())
            .map_err(|_| DanetError::BadShape {
                name: name.to_string(),
                expected: vec![0, 0, 0, 0],
                got: a.shape().to_vec(),
            })
    }

    /// Checks that the stored names and shapes match `cfg` exactly and
    /// that every value is finite.
    pub fn validate_against(&self, cfg: &NetConfig) -> Result<()> {
        cfg.validate()?;
        let table = shape_table(cfg);
        for (name, shape) in &table {
            let got = self.get(name)?;
            if got.shape() != shape.as_slice() {
                return Err(DanetError::BadShape {
                    name: name.clone(),
                    expected: shape.clone(),
                    got: got.shape().to_vec(),
                });
            }
            if got.iter().any(|x| !x.is_finite()) {
                return Err(DanetError::NonFiniteParam { name: name.clone() });
            }
        }
        if self.map.len() != table.len() {
            let expected: std::collections::BTreeSet<&str> =
                table.iter().map(|(n, _)| n.as_str()).collect();
            let extra = self
                .map
                .keys()
                .find(|k| !expected.contains(k.as_str()))
                .expect("length mismatch implies an extra name");
            return Err(DanetError::BadFile {
                reason: format!("unexpected parameter `{extra}`"),
            });
        }
        Ok(())
    }
}

fn name_key(seed: u64, name: &str) -> u64 {
    // FNV-1a over the name, mixed with the seed; distinct names get
    // independent counter streams.
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for byte in name.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    mix64(seed ^ mix64(h))
}

/// Deterministic initialization: each weight tensor is uniform in
/// `(-sqrt(6 / fan_in), sqrt(6 / fan_in)]` from a counter stream keyed on
/// the parameter name, every bias is zero.
pub fn init_params(seed: u64, cfg: &NetConfig) -> Result<NetParams> {
    cfg.validate()?;
    let mut map = BTreeMap::new();
    for (name, shape) in shape_table(cfg) {
        let arr = if name.ends_with(".bias") {
            ArrayD::zeros(IxDyn(&shape))
        } else {
            let bound = (6.0 / fan_in(&shape) as f64).sqrt();
            let stream = NoiseStream::new(name_key(seed, &name), 0, 0);
            let n: usize = shape.iter().product();
            let values: Vec<f64> = (0..n)
                .map(|i| bound * (2.0 * stream.unit_open(i as u64) - 1.0))
                .collect();
            ArrayD::from_shape_vec(IxDyn(&shape), values).expect("shape matches length")
        };
        map.insert(name, arr);
    }
    Ok(NetParams { map })
}

#[derive(Serialize, Deserialize)]
struct HeaderEntry {
    shape: Vec<usize>,
    dtype: String,
    offset: u64,
}

#[derive(Serialize, Deserialize)]
struct Header {
    version: String,
    params: BTreeMap<String, HeaderEntry>,
}

/// Writes `params` as a single container: an 8-byte little-endian header
/// length, a JSON header mapping each name to shape, dtype, and byte
/// offset, then the raw tensors as little-endian f64, in name order.
pub fn save_params(params: &NetParams, path: &Path) -> Result<()> {
    let mut header = Header {
        version: PARAMS_FORMAT_VERSION.to_string(),
        params: BTreeMap::new(),
    };
    let mut offset = 0u64;
    for (name, arr) in &params.map {
        header.params.insert(
            name.clone(),
            HeaderEntry {
                shape: arr.shape().to_vec(),
                dtype: "f64".to_string(),
                offset,
            },
        );
        offset += (arr.len() * 8) as u64;
    }
    let header_bytes = serde_json::to_vec(&header)?;

    let io_err = |source| DanetError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    let write = |file: &mut std::io::BufWriter<std::fs::File>, bytes: &[u8]| {
        file.write_all(bytes).map_err(|source| DanetError::Io {
            path: path.to_path_buf(),
            source,
        })
    };
    write(&mut file, &(header_bytes.len() as u64).to_le_bytes())?;
    write(&mut file, &header_bytes)?;
    for arr in params.map.values() {
        // BTreeMap iteration is name order, matching the offsets above.
        for &x in arr.iter() {
            write(&mut file, &x.to_le_bytes())?;
        }
    }
    file.flush().map_err(io_err)?;
    Ok(())
}

/// Reads a container written by [`save_params`].
pub fn load_params(path: &Path) -> Result<NetParams> {
    let io_err = |source| DanetError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::io::BufReader::new(std::fs::File::open(path).map_err(io_err)?);
    let mut len_bytes = [0u8; 8];
    file.read_exact(&mut len_bytes).map_err(io_err)?;
    let header_len = u64::from_le_bytes(len_bytes) as usize;
    let mut header_bytes = vec![0u8; header_len];
    file.read_exact(&mut header_bytes).map_err(io_err)?;
    let header: Header = serde_json::from_slice(&header_bytes)?;
    if header.version != PARAMS_FORMAT_VERSION {
        return Err(DanetError::BadVersion {
            expected: PARAMS_FORMAT_VERSION.to_string(),
            got: header.version,
        });
    }

    let mut payload = Vec::new();
    file.read_to_end(&mut payload).map_err(io_err)?;

    let mut map = BTreeMap::new();
    for (name, entry) in header.params {
        if entry.dtype != "f64" {
            return Err(DanetError::BadFile {
                reason: format!("parameter `{name}` has dtype `{}`", entry.dtype),
            });
        }
        let n: usize = entry.shape.iter().product();
        let start = entry.offset as usize;
        let end = start + n * 8;
        if end > payload.len() {
            return Err(DanetError::BadFile {
                reason: format!("parameter `{name}` extends past the payload"),
            });
        }
        let values: Vec<f64> = payload[start..end]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        let arr = ArrayD::from_shape_vec(IxDyn(&entry.shape), values).map_err(|_| {
            DanetError::BadFile {
                reason: format!("parameter `{name}` shape does not match its data"),
            }
        })?;
        map.insert(name, arr);
    }
    Ok(NetParams { map })
}
