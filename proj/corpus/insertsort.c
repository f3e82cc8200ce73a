// Insertion sort: the inner while loop moves j by data comparisons.
// seed: s=11
int a[16];

int main(int s) {
  int i;
  int j;
  int key;
  for (i = 0; i < 16; i++) {
    a[i] = (s * (16 - i)) % 23;
  }
  for (i = 1; i < 16; i++) {
    key = a[i];
    j = i - 1;
    while (j >= 0 && a[j] > key) {
      a[j + 1] = a[j];
      j = j - 1;
    }
    a[j + 1] = key;
  }
  return a[15];
}
