namespace mihd {}
