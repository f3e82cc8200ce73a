// Bitwise checksum: fixed byte and bit loops, the bit loop halves a mask.
// seed: init=255
int msg[16];

int main(int init) {
  int crc = init;
  int byte;
  int bit;
  int mask;
  for (byte = 0; byte < 16; byte++) {
    msg[byte] = byte * 37 % 256;
  }
  for (byte = 0; byte < 16; byte++) {
    crc = (crc + msg[byte]) % 65536;
    for (bit = 0; bit < 8; bit++) {
      if (crc % 2 == 1) {
        crc = crc / 2 + 40961;
      } else {
        crc = crc / 2;
      }
    }
    mask = 128;
    while (mask > 0) {
      crc = (crc + mask) % 65536;
      mask = mask / 2;
    }
  }
  return crc;
}
