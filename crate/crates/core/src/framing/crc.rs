//! 16-bit CRCs over the CCITT polynomial 0x1021.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrcVariant {
    /// Reflected, init 0xFFFF, final XOR 0xFFFF. The AX.25 / HDLC FCS.
    X25,
    /// MSB-first, init 0xFFFF, no final XOR.
    CcittFalse,
}

const POLY: u16 = 0x1021;
const POLY_REFLECTED: u16 = 0x8408;

const fn table_msb() -> [u16; 256] {
    let mut table = [0u16; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = (i as u16) << 8;
        let mut bit = 0;
        while bit < 8 {
            crc = if crc & 0x8000 != 0 { (crc << 1) ^ POLY } else { crc << 1 };
            bit += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

const fn table_lsb() -> [u16; 256] {
    let mut table = [0u16; 256];
    let mut i = 0;
    while i < 256 {
        let mut crc = i as u16;
        let mut bit = 0;
        while bit < 8 {
            crc = if crc & 1 != 0 { (crc >> 1) ^ POLY_REFLECTED } else { crc >> 1 };
            bit += 1;
        }
        table[i] = crc;
        i += 1;
    }
    table
}

static MSB_TABLE: [u16; 256] = table_msb();
static LSB_TABLE: [u16; 256] = table_lsb();

pub fn crc16(data: &[u8], variant: CrcVariant) -> u16 {
    match variant {
        CrcVariant::X25 => {
            let crc = data.iter().fold(0xFFFFu16, |crc, &b| {
                (crc >> 8) ^ LSB_TABLE[usize::from((crc as u8) ^ b)]
            });
            crc ^ 0xFFFF
        }
        CrcVariant::CcittFalse => data.iter().fold(0xFFFFu16, |crc, &b| {
            (crc << 8) ^ MSB_TABLE[usize::from((crc >> 8) as u8 ^ b)]
        }),
    }
}
