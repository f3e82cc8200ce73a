// Rectangular 2-deep nest with constant bounds.
// seed: n=0
int grid[200];

int main(int n) {
  int i;
  int j;
  int sum = 0;
  for (i = 0; i < 10; i++) {
    for (j = 0; j < 20; j++) {
      grid[i * 20 + j] = i + j + n;
      sum = sum + grid[i * 20 + j];
    }
  }
  return sum;
}
