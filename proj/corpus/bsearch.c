// Binary search: the exit depends on data, not on an iteration variable.
// seed: key=17
// seed: key=400
int data[64];

int main(int key) {
  int low = 0;
  int high = 63;
  int mid;
  int found = -1;
  int k;
  for (k = 0; k < 64; k++) {
    data[k] = 3 * k + 2;
  }
  while (low <= high) {
    mid = (low + high) / 2;
    if (data[mid] == key) {
      found = mid;
      low = high + 1;
    } else if (data[mid] > key) {
      high = mid - 1;
    } else {
      low = mid + 1;
    }
  }
  return found;
}
